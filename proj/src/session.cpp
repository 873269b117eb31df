#include "uavsim/session.hpp"

#include <filesystem>

#include "uavsim/checkpoint.hpp"
#include "uavsim/ppo.hpp"

namespace uavsim {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

std::string join(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

}  // namespace

void train_to_dir(const SimConfig& cfg, std::uint64_t seed,
                  const std::string& out_dir) {
  cfg.validate();
  ensure_dir(out_dir);

  const TrainResult result = train(
      [&cfg] { return Env(cfg.net, cfg.env); }, cfg.ppo, seed);

  save_checkpoint(join(out_dir, "checkpoint.txt"), result.params,
                  config_hash(cfg));
  write_reward_curve_csv(join(out_dir, "reward_curve.csv"),
                         result.reward_curve);
  write_manifest(join(out_dir, "manifest.json"), cfg, {seed}, "train");
}

void run_scheme_to_dir(const SimConfig& cfg, Scheme scheme,
                       const std::string& checkpoint_path,
                       const std::vector<std::uint64_t>& seeds,
                       const std::string& out_dir) {
  cfg.validate();
  if (seeds.empty()) throw ConfigError("run: at least one seed required");

  PolicyParams params;
  const PolicyParams* policy = nullptr;
  if (scheme_moves_uavs(scheme)) {
    if (checkpoint_path.empty())
      throw ConfigError("scheme " + to_string(scheme) +
                        " requires --checkpoint");
    params = load_checkpoint(checkpoint_path).params;
    policy = &params;
  }

  const RunOutput out = run_scheme(cfg, scheme, policy, seeds);
  ensure_dir(out_dir);
  write_metrics_csv(join(out_dir, "metrics.csv"), out.metrics);
  write_traces_csv(join(out_dir, "traces.csv"), out.traces);
  write_manifest(join(out_dir, "manifest.json"), cfg, seeds,
                 "run:" + to_string(scheme));
}

void sweep_to_dir(const SimConfig& cfg, Scheme scheme,
                  const std::string& checkpoint_path,
                  const std::vector<int>& uav_counts,
                  const std::vector<std::uint64_t>& seeds,
                  const std::string& out_dir) {
  if (uav_counts.empty()) throw ConfigError("sweep: no UAV counts given");
  ensure_dir(out_dir);
  for (int k : uav_counts) {
    SimConfig point = cfg;
    point.net.n_uavs = k;
    run_scheme_to_dir(point, scheme, checkpoint_path, seeds,
                      (std::filesystem::path(out_dir) /
                       ("k" + std::to_string(k)))
                          .string());
  }
}

void report_to_file(const std::vector<std::string>& metrics_paths,
                    const std::string& out_path) {
  if (metrics_paths.empty()) throw ConfigError("report: no metrics files");
  std::vector<MetricsRecord> all;
  for (const auto& path : metrics_paths) {
    const auto records = read_metrics_csv(path);
    all.insert(all.end(), records.begin(), records.end());
  }
  write_summary_csv(out_path, summarize(all));
}

}  // namespace uavsim

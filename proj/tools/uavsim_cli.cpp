// Command-line front end. Talks to the simulator exclusively through the
// shared-library C interface.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uavsim.h"

namespace {

struct ConfigHandle {
  uavsim_config_t* cfg = nullptr;
  ~ConfigHandle() { uavsim_config_destroy(cfg); }
};

int die(uavsim_status status) {
  std::fprintf(stderr, "error (%s): %s\n", uavsim_status_name(status),
               uavsim_last_error());
  return 1;
}

int make_config(const std::string& config_path,
                const std::vector<std::string>& overrides, ConfigHandle& out) {
  uavsim_status st = config_path.empty()
                         ? uavsim_config_create(&out.cfg)
                         : uavsim_config_load(config_path.c_str(), &out.cfg);
  if (st != UAVSIM_OK) return die(st);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n",
                   kv.c_str());
      return 1;
    }
    st = uavsim_config_set(out.cfg, kv.substr(0, eq).c_str(),
                           kv.substr(eq + 1).c_str());
    if (st != UAVSIM_OK) return die(st);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"THz multi-UAV downlink simulator and benchmark harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(uavsim_version()));

  std::string config_path;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "configuration file (key = value)");
  app.add_option("--set", overrides, "override one config key (key=value)")
      ->allow_extra_args(false);

  // train
  auto* train = app.add_subcommand("train", "train a trajectory policy");
  train->fallthrough();
  std::uint64_t train_seed = 1;
  long episodes = -1;
  std::string train_out = "runs/train";
  train->add_option("--seed", train_seed, "training seed");
  train->add_option("--episodes", episodes, "override episode count");
  train->add_option("--out", train_out, "output directory");

  // run
  auto* run = app.add_subcommand("run", "evaluate one benchmark scheme");
  run->fallthrough();
  std::string scheme = "su-pp";
  std::string checkpoint;
  std::vector<std::uint64_t> seeds{1};
  std::string run_out = "runs/eval";
  run->add_option("--scheme", scheme, "su-rp, ou-rp, su-pp or ou-pp")
      ->required();
  run->add_option("--checkpoint", checkpoint,
                  "policy checkpoint (required for ou-* schemes)");
  run->add_option("--seeds", seeds, "evaluation seeds")->delimiter(',');
  run->add_option("--out", run_out, "output directory");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "repeat a scheme per UAV count");
  sweep->fallthrough();
  std::vector<int> uav_counts{2, 3, 4, 5};
  std::string sweep_scheme = "su-pp";
  std::string sweep_checkpoint;
  std::vector<std::uint64_t> sweep_seeds{1};
  std::string sweep_out = "runs/sweep";
  sweep->add_option("--uavs", uav_counts, "UAV counts")->delimiter(',');
  sweep->add_option("--scheme", sweep_scheme, "scheme to sweep");
  sweep->add_option("--checkpoint", sweep_checkpoint, "policy checkpoint");
  sweep->add_option("--seeds", sweep_seeds, "evaluation seeds")
      ->delimiter(',');
  sweep->add_option("--out", sweep_out, "output directory");

  // report
  auto* report = app.add_subcommand("report", "summarize metrics CSVs");
  report->fallthrough();
  std::vector<std::string> inputs;
  std::string report_out = "summary.csv";
  report->add_option("--in", inputs, "metrics.csv files")
      ->required()
      ->delimiter(',');
  report->add_option("--out", report_out, "summary output path");

  CLI11_PARSE(app, argc, argv);

  if (report->parsed()) {
    std::vector<const char*> paths;
    paths.reserve(inputs.size());
    for (const auto& p : inputs) paths.push_back(p.c_str());
    const uavsim_status st =
        uavsim_report(paths.data(), paths.size(), report_out.c_str());
    if (st != UAVSIM_OK) return die(st);
    std::printf("wrote %s\n", report_out.c_str());
    return 0;
  }

  ConfigHandle cfg;
  if (int rc = make_config(config_path, overrides, cfg); rc != 0) return rc;

  if (train->parsed()) {
    if (episodes >= 0) {
      const std::string value = std::to_string(episodes);
      if (uavsim_config_set(cfg.cfg, "episodes", value.c_str()) != UAVSIM_OK)
        return die(UAVSIM_ERR_BAD_CONFIG);
    }
    const uavsim_status st =
        uavsim_train(cfg.cfg, train_seed, train_out.c_str());
    if (st != UAVSIM_OK) return die(st);
    std::printf("wrote %s/checkpoint.txt and %s/reward_curve.csv\n",
                train_out.c_str(), train_out.c_str());
    return 0;
  }

  if (run->parsed()) {
    const uavsim_status st = uavsim_run_scheme(
        cfg.cfg, scheme.c_str(), checkpoint.empty() ? nullptr : checkpoint.c_str(),
        seeds.data(), seeds.size(), run_out.c_str());
    if (st != UAVSIM_OK) return die(st);
    std::printf("wrote %s/metrics.csv and %s/traces.csv\n", run_out.c_str(),
                run_out.c_str());
    return 0;
  }

  if (sweep->parsed()) {
    const uavsim_status st = uavsim_sweep_uavs(
        cfg.cfg, sweep_scheme.c_str(),
        sweep_checkpoint.empty() ? nullptr : sweep_checkpoint.c_str(),
        uav_counts.data(), uav_counts.size(), sweep_seeds.data(),
        sweep_seeds.size(), sweep_out.c_str());
    if (st != UAVSIM_OK) return die(st);
    std::printf("wrote per-count runs under %s/\n", sweep_out.c_str());
    return 0;
  }

  return 0;
}

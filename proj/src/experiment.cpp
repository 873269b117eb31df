#include "uavsim/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace uavsim {

namespace {

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::su_rp: return "su-rp";
    case Scheme::ou_rp: return "ou-rp";
    case Scheme::su_pp: return "su-pp";
    case Scheme::ou_pp: return "ou-pp";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "su-rp") return Scheme::su_rp;
  if (s == "ou-rp") return Scheme::ou_rp;
  if (s == "su-pp") return Scheme::su_pp;
  if (s == "ou-pp") return Scheme::ou_pp;
  throw ConfigError("unknown scheme: '" + s +
                    "' (expected su-rp, ou-rp, su-pp or ou-pp)");
}

bool scheme_moves_uavs(Scheme s) {
  return s == Scheme::ou_rp || s == Scheme::ou_pp;
}

bool scheme_uses_sca(Scheme s) {
  return s == Scheme::su_pp || s == Scheme::ou_pp;
}

Topology generate_scenario(const NetworkConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  return initial_topology(cfg, rng);
}

RunOutput run_scheme(const SimConfig& cfg, Scheme scheme,
                     const PolicyParams* policy,
                     const std::vector<std::uint64_t>& seeds) {
  cfg.validate();
  if (scheme_moves_uavs(scheme) && policy == nullptr)
    throw ConfigError("scheme " + to_string(scheme) +
                      " requires a trained policy checkpoint");

  EnvOptions opts = cfg.env;
  opts.power_policy =
      scheme_uses_sca(scheme) ? PowerPolicyKind::sca : PowerPolicyKind::random;
  // Benchmark rollouts score every slot; terminal bonuses and early exits
  // stay as the environment defines them.
  Env env(cfg.net, opts);

  if (policy && policy->state_dim != env.state_size())
    throw ConfigError("checkpoint was trained for a different network shape");

  const std::string hash = config_hash(cfg);
  const std::string scheme_name = to_string(scheme);
  RunOutput out;

  for (std::uint64_t seed : seeds) {
    std::vector<double> state = env.reset(seed);
    bool done = false;
    while (!done) {
      EnvAction action = EnvAction::zero(cfg.net.n_uavs);
      if (scheme_moves_uavs(scheme))
        action = mean_action(policy_forward(state, *policy), cfg.net.v_max);
      const int slot = env.slot();
      const StepOutcome step = env.step(action);

      auto push = [&](const std::string& metric, double value) {
        out.metrics.push_back(
            {scheme_name, seed, slot, metric, value, hash});
      };
      push(kMetricMeanGuRate,
           step.info.sum_rate / static_cast<double>(cfg.net.n_gus));
      push(kMetricReward, step.reward);
      for (int k = 0; k < cfg.net.n_uavs; ++k)
        push(kMetricUavRatePrefix + std::to_string(k),
             step.info.per_uav_rate[static_cast<std::size_t>(k)]);

      state = step.next_state;
      done = step.done;
    }
    out.traces.insert(out.traces.end(), env.trace().begin(),
                      env.trace().end());
  }
  return out;
}

void write_metrics_csv(const std::string& path,
                       const std::vector<MetricsRecord>& records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write metrics: " + path);
  out << "scheme,seed,slot,metric,value\n";
  for (const auto& r : records)
    out << r.scheme << ',' << r.seed << ',' << r.slot << ',' << r.metric << ','
        << fmt(r.value) << '\n';
  if (!out) throw IoError("failed writing metrics: " + path);
}

std::vector<MetricsRecord> read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open metrics: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "scheme,seed,slot,metric,value")
    throw IoError("unrecognized metrics header in " + path);
  std::vector<MetricsRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto parts = split_csv_line(line);
    if (parts.size() != 5)
      throw IoError(path + ":" + std::to_string(line_no) +
                    ": expected 5 fields");
    MetricsRecord r;
    r.scheme = parts[0];
    r.seed = std::stoull(parts[1]);
    r.slot = std::stoi(parts[2]);
    r.metric = parts[3];
    r.value = std::stod(parts[4]);
    records.push_back(std::move(r));
  }
  return records;
}

void write_traces_csv(const std::string& path,
                      const std::vector<Env::TraceRow>& traces) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write traces: " + path);
  out << "slot,uav_id,x,y,z,v,phi,reward\n";
  for (const auto& t : traces)
    out << t.slot << ',' << t.uav << ',' << fmt(t.x) << ',' << fmt(t.y) << ','
        << fmt(t.z) << ',' << fmt(t.v) << ',' << fmt(t.turn) << ','
        << fmt(t.reward) << '\n';
  if (!out) throw IoError("failed writing traces: " + path);
}

void write_reward_curve_csv(const std::string& path,
                            const std::vector<double>& curve) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write reward curve: " + path);
  out << "episode,mean_reward\n";
  for (std::size_t e = 0; e < curve.size(); ++e)
    out << e << ',' << fmt(curve[e]) << '\n';
  if (!out) throw IoError("failed writing reward curve: " + path);
}

void write_manifest(const std::string& path, const SimConfig& cfg,
                    const std::vector<std::uint64_t>& seeds,
                    const std::string& note) {
  nlohmann::json j;
  j["tool"] = "uavsim";
  j["format"] = 1;
  j["config_hash"] = config_hash(cfg);
  nlohmann::json jc;
  for (const auto& key : config_keys()) jc[key] = config_get(cfg, key);
  j["config"] = jc;
  j["seeds"] = seeds;
  if (!note.empty()) j["note"] = note;

  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing manifest: " + path);
}

std::vector<SummaryRow> summarize(const std::vector<MetricsRecord>& records) {
  std::map<std::pair<std::string, std::string>, std::vector<double>> groups;
  for (const auto& r : records) groups[{r.scheme, r.metric}].push_back(r.value);

  std::vector<SummaryRow> rows;
  for (const auto& [key, values] : groups) {
    SummaryRow row;
    row.scheme = key.first;
    row.metric = key.second;
    row.n = values.size();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    row.mean = mean;
    row.stddev = values.size() > 1
                     ? std::sqrt(var / static_cast<double>(values.size() - 1))
                     : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write summary: " + path);
  out << "scheme,metric,n,mean,stddev\n";
  for (const auto& r : rows)
    out << r.scheme << ',' << r.metric << ',' << r.n << ',' << fmt(r.mean)
        << ',' << fmt(r.stddev) << '\n';
  if (!out) throw IoError("failed writing summary: " + path);
}

}  // namespace uavsim

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavsim/config.hpp"
#include "uavsim/env.hpp"
#include "uavsim/policy.hpp"

namespace uavsim {

// The four benchmark arms: static vs optimized UAV trajectories crossed with
// random vs optimized transmit power.
enum class Scheme { su_rp, ou_rp, su_pp, ou_pp };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);
bool scheme_moves_uavs(Scheme s);   // OU arms
bool scheme_uses_sca(Scheme s);     // PP arms

struct MetricsRecord {
  std::string scheme;
  std::uint64_t seed = 0;
  int slot = 0;
  std::string metric;
  double value = 0.0;
  std::string config_hash;
};

// GU placement drawn uniformly over the area (fixed-count point process),
// UAVs at the deterministic start.
Topology generate_scenario(const NetworkConfig& cfg, std::uint64_t seed);

struct RunOutput {
  std::vector<MetricsRecord> metrics;
  std::vector<Env::TraceRow> traces;
};

// One full evaluation of a scheme over the given seeds. OU arms require a
// policy; throws ConfigError when it is missing or its shape mismatches.
RunOutput run_scheme(const SimConfig& cfg, Scheme scheme,
                     const PolicyParams* policy,
                     const std::vector<std::uint64_t>& seeds);

// file I/O -----------------------------------------------------------------

void write_metrics_csv(const std::string& path,
                       const std::vector<MetricsRecord>& records);
std::vector<MetricsRecord> read_metrics_csv(const std::string& path);

void write_traces_csv(const std::string& path,
                      const std::vector<Env::TraceRow>& traces);

void write_reward_curve_csv(const std::string& path,
                            const std::vector<double>& curve);

// Run manifest: full config, seeds, and the config content hash, as JSON.
void write_manifest(const std::string& path, const SimConfig& cfg,
                    const std::vector<std::uint64_t>& seeds,
                    const std::string& note = "");

struct SummaryRow {
  std::string scheme;
  std::string metric;
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

// Mean and standard deviation per (scheme, metric) across all rows.
std::vector<SummaryRow> summarize(const std::vector<MetricsRecord>& records);
void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);

constexpr const char* kMetricMeanGuRate = "mean_gu_rate";
constexpr const char* kMetricReward = "reward";
constexpr const char* kMetricUavRatePrefix = "uav_rate_";

}  // namespace uavsim

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavsim/config.hpp"
#include "uavsim/experiment.hpp"

namespace uavsim {

// End-to-end drivers behind the shared-library interface and the CLI. Each
// one creates out_dir if needed and leaves a manifest next to its outputs.

// Trains a policy; writes checkpoint.txt, reward_curve.csv, manifest.json.
void train_to_dir(const SimConfig& cfg, std::uint64_t seed,
                  const std::string& out_dir);

// Evaluates a scheme; writes metrics.csv, traces.csv, manifest.json.
// checkpoint_path may be empty for the static-UAV schemes.
void run_scheme_to_dir(const SimConfig& cfg, Scheme scheme,
                       const std::string& checkpoint_path,
                       const std::vector<std::uint64_t>& seeds,
                       const std::string& out_dir);

// Repeats run_scheme per UAV count with matched seeds into k<N>/ subdirs.
void sweep_to_dir(const SimConfig& cfg, Scheme scheme,
                  const std::string& checkpoint_path,
                  const std::vector<int>& uav_counts,
                  const std::vector<std::uint64_t>& seeds,
                  const std::string& out_dir);

// Aggregates metrics CSVs into a summary CSV.
void report_to_file(const std::vector<std::string>& metrics_paths,
                    const std::string& out_path);

}  // namespace uavsim

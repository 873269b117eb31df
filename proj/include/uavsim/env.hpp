#pragma once

#include <functional>
#include <vector>

#include "uavsim/power_sca.hpp"
#include "uavsim/rng.hpp"
#include "uavsim/types.hpp"

namespace uavsim {

struct EnvOptions {
  double reward_scale = 1e-12;        // scales the per-slot sum rate reward
  bool terminate_on_violation = true; // end the episode on a separation breach
  PowerPolicyKind power_policy = PowerPolicyKind::sca;
  ScaOptions sca;
  int bkmc_max_iters = 100;
};

// Per-UAV control: speed in [0, v_max] and turn in [-pi/3, pi/3], flattened
// as (v_0, turn_0, v_1, turn_1, ...).
struct EnvAction {
  std::vector<double> a;

  double speed(int k) const { return a[2 * static_cast<std::size_t>(k)]; }
  double turn(int k) const { return a[2 * static_cast<std::size_t>(k) + 1]; }

  static EnvAction zero(int n_uavs) {
    return EnvAction{std::vector<double>(2 * static_cast<std::size_t>(n_uavs),
                                         0.0)};
  }
};

constexpr double kMaxTurn = 1.0471975511965976;  // pi/3

struct StepInfo {
  std::vector<double> per_uav_rate;  // bit/s, sum rate of each UAV's cluster
  double sum_rate = 0.0;             // bit/s
  bool separation_violation = false;
};

struct StepOutcome {
  std::vector<double> next_state;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

using PowerFn = std::function<PowerAllocation(
    const Topology&, const Association&, const NetworkConfig&, Rng&)>;

// Deterministic starting line-up: UAVs evenly spaced along the area's center
// row, heading 0.
std::vector<Vec3> default_uav_start(const NetworkConfig& cfg);

// Episode-start placement: GUs drawn uniformly over the area from the given
// stream, UAVs at the default start.
Topology initial_topology(const NetworkConfig& cfg, Rng& rng);

// Per-slot dense reward: scaled sum of each UAV's cluster rate.
double raw_reward(const Topology& topo, const Association& assoc,
                  const PowerAllocation& powers, const NetworkConfig& cfg,
                  double reward_scale);

// Uniform random per-link powers rescaled so each UAV's budget binds with
// equality.
PowerAllocation random_power(const Association& assoc,
                             const NetworkConfig& cfg, Rng& rng);

// One episode of the trajectory-control task. reset() draws GU positions
// uniformly over the area, lines the UAVs up at the default start, and runs
// the balanced clustering once; step() moves the UAVs, allocates power, and
// scores the slot. Terminal rewards: +2 when the final slot is reached, -2
// when two UAVs come closer than d_min.
class Env {
 public:
  Env(NetworkConfig net, EnvOptions opt);

  std::vector<double> reset(std::uint64_t seed);

  // Throws std::logic_error when the episode is already done.
  StepOutcome step(const EnvAction& action);

  int state_size() const { return 3 * net_.n_uavs + 2 * net_.n_gus; }
  int action_size() const { return 2 * net_.n_uavs; }
  std::vector<double> state() const;

  bool done() const { return done_; }
  int slot() const { return slot_; }
  const Topology& topology() const { return topo_; }
  const Association& association() const { return assoc_; }
  const PowerAllocation& last_power() const { return last_power_; }
  const NetworkConfig& network() const { return net_; }
  const EnvOptions& options() const { return opt_; }

  // Replaces the power policy (used by the benchmark schemes and tests).
  void set_power_fn(PowerFn fn) { power_fn_ = std::move(fn); }

  struct TraceRow {
    int slot;
    int uav;
    double x, y, z;
    double v, turn;
    double reward;
  };
  const std::vector<TraceRow>& trace() const { return trace_; }

 private:
  PowerAllocation allocate_power();

  NetworkConfig net_;
  EnvOptions opt_;
  Topology topo_;
  Association assoc_;
  PowerAllocation last_power_;
  Rng rng_;
  int slot_ = 0;
  bool done_ = true;
  std::vector<TraceRow> trace_;
  PowerFn power_fn_;
};

}  // namespace uavsim

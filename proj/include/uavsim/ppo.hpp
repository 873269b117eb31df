#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "uavsim/env.hpp"
#include "uavsim/policy.hpp"

namespace uavsim {

struct PpoConfig {
  double clip_epsilon = 0.2;
  double discount = 0.99;
  double gae_lambda = 0.95;
  double learning_rate = 3e-4;
  int minibatch_size = 120;  // capped at the rollout size
  int epochs = 3;
  long episodes = 500000;
  int actors = 4;
  double value_loss_weight = 0.5;
  double entropy_weight = 0.01;
  int hidden_units = 128;
  bool normalize_advantages = true;
  enum class Optimizer { sgd, adam };
  Optimizer optimizer = Optimizer::sgd;

  void validate() const;
};

struct Transition {
  std::vector<double> state;
  std::vector<double> raw_action;  // pre-squash
  double log_prob = 0.0;           // under the behavior policy
  double reward = 0.0;
  double value = 0.0;
  bool done = false;
};

struct TrajectoryMemory {
  std::vector<Transition> steps;

  void clear() { steps.clear(); }
  std::size_t size() const { return steps.size(); }
};

// Generalized advantage estimation. values carries one trailing bootstrap
// entry (length T+1); accumulation resets across done flags.
void gae(const std::vector<double>& rewards, const std::vector<double>& values,
         const std::vector<bool>& dones, double discount, double lambda,
         std::vector<double>& advantages, std::vector<double>& returns);

inline double prob_ratio(double logp_new, double logp_old) {
  return std::exp(logp_new - logp_old);
}

// min(r * A, clip(r, 1-eps, 1+eps) * A) for a single sample.
double clipped_objective(double ratio, double advantage, double eps);

struct UpdateStats {
  double policy_objective = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;  // share of samples on the clipped branch
  int minibatches = 0;
};

// Moment accumulators for the adaptive optimizer option.
struct AdamState {
  std::vector<double> m, v;
  long t = 0;
};

// Mean maximization objective over the whole memory -- clipped policy term
// minus weighted value loss plus weighted entropy -- with its parameter
// gradient written to *grads when non-null. Advantages/returns are taken as
// given. This is the quantity each ppo_update minibatch ascends; exposed so
// tests can verify the analytic gradient against finite differences.
double ppo_objective(const TrajectoryMemory& memory,
                     const std::vector<double>& advantages,
                     const std::vector<double>& returns,
                     const PolicyParams& params, const PpoConfig& cfg,
                     double v_max, PolicyParams* grads);

// Parameter gradient of w_mean . mean(s) + w_log_std . log_std(s) +
// w_value * value(s); the verification hook for the network Jacobian.
PolicyParams policy_output_grad(const std::vector<double>& state,
                                const PolicyParams& params,
                                const std::vector<double>& w_mean,
                                const std::vector<double>& w_log_std,
                                double w_value);

// One PPO update over a full rollout: GAE, per-batch advantage
// normalization, `epochs` passes of shuffled minibatches of first-order
// ascent on the clipped objective minus weighted value loss plus weighted
// entropy. Clears the memory afterwards, which retires the behavior policy.
// Throws std::runtime_error if the loss goes non-finite.
UpdateStats ppo_update(TrajectoryMemory& memory, PolicyParams& params,
                       const PpoConfig& cfg, double v_max, Rng& rng,
                       AdamState* adam = nullptr);

struct TrainResult {
  PolicyParams params;
  std::vector<double> reward_curve;  // mean episode reward across actors
};

using EnvFactory = std::function<Env()>;
using ProgressFn = std::function<void(long episode, double mean_reward)>;

// Full training loop: per episode, one shared scenario is rolled out by
// `actors` independent actors under the current policy, then the policy is
// updated from the pooled memory.
TrainResult train(const EnvFactory& make_env, const PpoConfig& cfg,
                  std::uint64_t seed, const ProgressFn& progress = {});

}  // namespace uavsim

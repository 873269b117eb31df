#pragma once

#include <vector>

#include "uavsim/env.hpp"
#include "uavsim/rng.hpp"

namespace uavsim {

constexpr double kLogStdMin = -5.0;
constexpr double kLogStdMax = 2.0;

// Shared-trunk actor-critic MLP: two tanh hidden layers, an actor head that
// emits per-dimension Gaussian means and log standard deviations, and a
// scalar critic head.
struct PolicyParams {
  int state_dim = 0;
  int action_dim = 0;  // 2 * n_uavs
  int hidden = 128;

  std::vector<double> w1, b1;  // hidden x state_dim
  std::vector<double> w2, b2;  // hidden x hidden
  std::vector<double> wa, ba;  // (2 * action_dim) x hidden
  std::vector<double> wv, bv;  // 1 x hidden

  static PolicyParams init(int state_dim, int action_dim, int hidden,
                           Rng& rng);
  static PolicyParams zeros(int state_dim, int action_dim, int hidden);

  std::size_t size() const;
  std::vector<double> flatten() const;
  void unflatten(const std::vector<double>& flat);
};

struct PolicyOutput {
  std::vector<double> mean;     // pre-squash Gaussian means
  std::vector<double> log_std;  // clamped to [kLogStdMin, kLogStdMax]
  double value = 0.0;
};

// Throws std::invalid_argument on state size mismatch.
PolicyOutput policy_forward(const std::vector<double>& state,
                            const PolicyParams& params);

struct ActionSample {
  EnvAction action;
  std::vector<double> raw;  // pre-squash Gaussian draw
  double log_prob = 0.0;    // density of `action` over the bounded box
};

// Draw a raw Gaussian action, squash through tanh, and map to the bounds.
ActionSample sample_action(const PolicyOutput& out, double v_max, Rng& rng);

// Deterministic action at the squashed distribution mean.
EnvAction mean_action(const PolicyOutput& out, double v_max);

// Bounded action corresponding to a raw pre-squash vector.
EnvAction squash_action(const std::vector<double>& raw, double v_max);

// Log density of the bounded action reached from `raw`, including the tanh
// and affine-rescaling Jacobian corrections.
double action_log_prob(const PolicyOutput& out, const std::vector<double>& raw,
                       double v_max);

// Inverse of squash_action; requires the action to lie strictly inside the
// bounds.
std::vector<double> raw_from_action(const EnvAction& action, double v_max);

}  // namespace uavsim

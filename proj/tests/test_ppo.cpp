#include "uavsim/ppo.hpp"

#include <cmath>

#include "doctest.h"

using namespace uavsim;

namespace {

PpoConfig toy_config() {
  PpoConfig cfg;
  cfg.hidden_units = 8;
  cfg.minibatch_size = 16;
  cfg.epochs = 1;
  cfg.actors = 1;
  return cfg;
}

// Reference GAE: explicit double sum A_n = sum_l (gamma*lambda)^l delta_{n+l}
// truncated at the first done flag.
void gae_brute_force(const std::vector<double>& r,
                     const std::vector<double>& v,
                     const std::vector<bool>& dones, double gamma,
                     double lambda, std::vector<double>& adv) {
  const std::size_t T = r.size();
  adv.assign(T, 0.0);
  for (std::size_t n = 0; n < T; ++n) {
    double coef = 1.0;
    for (std::size_t l = n; l < T; ++l) {
      const double nonterm = dones[l] ? 0.0 : 1.0;
      const double delta = r[l] + gamma * v[l + 1] * nonterm - v[l];
      adv[n] += coef * delta;
      if (dones[l]) break;
      coef *= gamma * lambda;
    }
  }
}

// A small synthetic batch: random states/actions with log-probs evaluated
// under the given parameters (so ratios start at 1).
TrajectoryMemory synthetic_memory(const PolicyParams& params, int T,
                                  double v_max, Rng& rng) {
  TrajectoryMemory mem;
  for (int t = 0; t < T; ++t) {
    Transition tr;
    tr.state.resize(static_cast<std::size_t>(params.state_dim));
    for (auto& s : tr.state) s = rng.uniform(0.0, 1.0);
    const PolicyOutput out = policy_forward(tr.state, params);
    const ActionSample sample = sample_action(out, v_max, rng);
    tr.raw_action = sample.raw;
    tr.log_prob = sample.log_prob;
    tr.value = out.value;
    tr.reward = rng.uniform(-1.0, 1.0);
    tr.done = (t == T - 1);
    mem.steps.push_back(std::move(tr));
  }
  return mem;
}

}  // namespace

TEST_CASE("gae undiscounted terminal case") {
  std::vector<double> adv, ret;
  gae({1.0, 1.0}, {0.0, 0.0, 0.0}, {false, true}, 1.0, 1.0, adv, ret);
  CHECK(adv[0] == doctest::Approx(2.0));
  CHECK(adv[1] == doctest::Approx(1.0));
  CHECK(ret[0] == doctest::Approx(2.0));
  CHECK(ret[1] == doctest::Approx(1.0));
}

TEST_CASE("gae with lambda zero is the one-step TD residual") {
  Rng rng(1);
  std::vector<double> r(6), v(7);
  std::vector<bool> dones(6, false);
  dones[5] = true;
  for (auto& x : r) x = rng.uniform(-1.0, 1.0);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  std::vector<double> adv, ret;
  gae(r, v, dones, 0.9, 0.0, adv, ret);
  for (std::size_t n = 0; n < 6; ++n) {
    const double nonterm = dones[n] ? 0.0 : 1.0;
    CHECK(adv[n] ==
          doctest::Approx(r[n] + 0.9 * v[n + 1] * nonterm - v[n]).epsilon(1e-12));
  }
}

TEST_CASE("gae worked three-step case matches the double sum") {
  const std::vector<double> r = {1.0, 0.0, 1.0};
  const std::vector<double> v = {0.5, 0.5, 0.5, 0.0};
  const std::vector<bool> dones = {false, false, true};
  std::vector<double> adv, ret, ref;
  gae(r, v, dones, 0.99, 0.95, adv, ret);
  gae_brute_force(r, v, dones, 0.99, 0.95, ref);
  for (std::size_t n = 0; n < 3; ++n)
    CHECK(adv[n] == doctest::Approx(ref[n]).epsilon(1e-12));
}

TEST_CASE("gae equals the double sum on random horizons") {
  Rng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const int T = 1 + rng.uniform_int(10);
    std::vector<double> r(static_cast<std::size_t>(T)),
        v(static_cast<std::size_t>(T) + 1);
    std::vector<bool> dones(static_cast<std::size_t>(T), false);
    for (auto& x : r) x = rng.uniform(-2.0, 2.0);
    for (auto& x : v) x = rng.uniform(-2.0, 2.0);
    for (std::size_t i = 0; i + 1 < dones.size(); ++i)
      dones[i] = rng.uniform01() < 0.2;
    dones.back() = true;
    const double gamma = rng.uniform(0.5, 1.0);
    const double lambda = rng.uniform(0.0, 1.0);

    std::vector<double> adv, ret, ref;
    gae(r, v, dones, gamma, lambda, adv, ret);
    gae_brute_force(r, v, dones, gamma, lambda, ref);
    for (std::size_t n = 0; n < adv.size(); ++n) {
      CHECK(std::abs(adv[n] - ref[n]) <= 1e-12);
      CHECK(ret[n] == doctest::Approx(adv[n] + v[n]).epsilon(1e-12));
    }
  }
}

TEST_CASE("gae with lambda one is discounted return minus baseline") {
  Rng rng(3);
  const int T = 8;
  std::vector<double> r(T), v(T + 1);
  std::vector<bool> dones(T, false);
  dones[T - 1] = true;
  for (auto& x : r) x = rng.uniform(-1.0, 1.0);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  const double gamma = 0.97;

  std::vector<double> adv, ret;
  gae(r, v, dones, gamma, 1.0, adv, ret);
  for (int n = 0; n < T; ++n) {
    double discounted = 0.0;
    double c = 1.0;
    for (int l = n; l < T; ++l) {
      discounted += c * r[static_cast<std::size_t>(l)];
      c *= gamma;
    }
    CHECK(adv[static_cast<std::size_t>(n)] ==
          doctest::Approx(discounted - v[static_cast<std::size_t>(n)])
              .epsilon(1e-10));
  }
}

TEST_CASE("gae input validation") {
  std::vector<double> adv, ret;
  CHECK_THROWS_AS(gae({1.0}, {0.0}, {true}, 0.9, 0.9, adv, ret),
                  std::invalid_argument);
  CHECK_THROWS_AS(gae({1.0}, {0.0, 0.0}, {true, false}, 0.9, 0.9, adv, ret),
                  std::invalid_argument);
}

TEST_CASE("probability ratio identities") {
  CHECK(prob_ratio(-1.5, -1.5) == doctest::Approx(1.0));
  CHECK(prob_ratio(std::log(2.0) - 1.0, -1.0) ==
        doctest::Approx(2.0).epsilon(1e-12));
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const double lo = rng.uniform(-5.0, 5.0);
    const double ln = rng.uniform(-5.0, 5.0);
    CHECK(prob_ratio(ln, lo) * std::exp(lo) ==
          doctest::Approx(std::exp(ln)).epsilon(1e-12));
  }
}

TEST_CASE("clipped objective worked cases and bound") {
  CHECK(clipped_objective(1.5, 1.0, 0.2) == doctest::Approx(1.2));
  CHECK(clipped_objective(0.5, -1.0, 0.2) == doctest::Approx(-0.8));
  CHECK(clipped_objective(1.0, 3.7, 0.2) == doctest::Approx(3.7));
  CHECK_THROWS_AS(clipped_objective(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(clipped_objective(1.0, 1.0, 1.0), std::invalid_argument);

  Rng rng(5);
  for (int i = 0; i < 100000; ++i) {
    const double r = rng.uniform(0.0, 3.0);
    const double a = rng.uniform(-2.0, 2.0);
    const double eps = rng.uniform(0.01, 0.9);
    CHECK(clipped_objective(r, a, eps) <= r * a + 1e-15);
  }
}

TEST_CASE("ppo objective gradient matches finite differences") {
  Rng rng(6);
  PpoConfig cfg = toy_config();
  const double v_max = 5.0;
  PolicyParams params = PolicyParams::init(4, 2, cfg.hidden_units, rng);
  TrajectoryMemory mem = synthetic_memory(params, 4, v_max, rng);

  // Positions come from a slightly different policy so ratios are not all 1.
  PolicyParams behind = params;
  {
    std::vector<double> th = behind.flatten();
    for (auto& t : th) t += rng.uniform(-0.01, 0.01);
    behind.unflatten(th);
  }
  for (auto& tr : mem.steps) {
    const PolicyOutput out = policy_forward(tr.state, behind);
    tr.log_prob = action_log_prob(out, tr.raw_action, v_max);
    tr.value = out.value;
  }

  std::vector<double> adv(4), ret(4);
  for (int i = 0; i < 4; ++i) {
    adv[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
    ret[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
  }

  PolicyParams grads;
  const double base = ppo_objective(mem, adv, ret, params, cfg, v_max, &grads);
  CHECK(std::isfinite(base));

  const std::vector<double> ga = grads.flatten();
  std::vector<double> theta = params.flatten();
  const double eps = 1e-6;
  int checked = 0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    PolicyParams hi = params, lo = params;
    std::vector<double> th = theta;
    th[i] = theta[i] + eps;
    hi.unflatten(th);
    th[i] = theta[i] - eps;
    lo.unflatten(th);
    const double fhi = ppo_objective(mem, adv, ret, hi, cfg, v_max, nullptr);
    const double flo = ppo_objective(mem, adv, ret, lo, cfg, v_max, nullptr);
    const double fd = (fhi - flo) / (2.0 * eps);
    CHECK(std::abs(fd - ga[i]) <= std::max(1e-7, 1e-4 * std::abs(ga[i])));
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("zero advantages and zero aux weights leave parameters unchanged") {
  Rng rng(7);
  PpoConfig cfg = toy_config();
  cfg.value_loss_weight = 0.0;
  cfg.entropy_weight = 0.0;
  PolicyParams params = PolicyParams::init(4, 2, cfg.hidden_units, rng);
  TrajectoryMemory mem = synthetic_memory(params, 6, 5.0, rng);
  for (auto& tr : mem.steps) tr.reward = 0.0;
  for (auto& tr : mem.steps) tr.value = 0.0;
  // Rewards and values are zero, so advantages are identically zero.
  const std::vector<double> before = params.flatten();
  Rng update_rng(8);
  ppo_update(mem, params, cfg, 5.0, update_rng);
  CHECK(params.flatten() == before);
}

TEST_CASE("positive advantages raise the chosen action's log-probability") {
  Rng rng(9);
  PpoConfig cfg = toy_config();
  cfg.normalize_advantages = false;  // keep the advantages genuinely positive
  cfg.value_loss_weight = 0.0;
  cfg.entropy_weight = 0.0;
  cfg.discount = 1.0;
  cfg.gae_lambda = 1.0;
  const double v_max = 5.0;
  PolicyParams params = PolicyParams::init(4, 2, cfg.hidden_units, rng);

  // One repeated state/action with reward 1 and V = 0: advantage +1 per step.
  TrajectoryMemory mem;
  std::vector<double> state = {0.2, 0.4, 0.6, 0.8};
  const PolicyOutput out = policy_forward(state, params);
  const ActionSample sample = sample_action(out, v_max, rng);
  for (int t = 0; t < 8; ++t) {
    Transition tr;
    tr.state = state;
    tr.raw_action = sample.raw;
    tr.log_prob = sample.log_prob;
    tr.reward = 1.0;
    tr.value = 0.0;
    tr.done = true;  // each step its own one-step episode
    mem.steps.push_back(tr);
  }

  const double before =
      action_log_prob(policy_forward(state, params), sample.raw, v_max);
  Rng update_rng(10);
  ppo_update(mem, params, cfg, v_max, update_rng);
  const double after =
      action_log_prob(policy_forward(state, params), sample.raw, v_max);
  CHECK(after >= before);
  CHECK(mem.size() == 0);  // memory retired with the behavior policy
}

TEST_CASE("update reports a sane clipped fraction and clears memory") {
  Rng rng(11);
  PpoConfig cfg = toy_config();
  PolicyParams params = PolicyParams::init(6, 4, cfg.hidden_units, rng);
  TrajectoryMemory mem = synthetic_memory(params, 20, 5.0, rng);
  Rng update_rng(12);
  const UpdateStats stats = ppo_update(mem, params, cfg, 5.0, update_rng);
  CHECK(stats.clip_fraction >= 0.0);
  CHECK(stats.clip_fraction <= 1.0);
  CHECK(stats.minibatches >= 1);
  CHECK(mem.size() == 0);
}

TEST_CASE("train with zero episodes returns the initial parameters") {
  NetworkConfig net;
  net.n_uavs = 2;
  net.n_gus = 4;
  net.area_side = 50.0;
  net.n_slots = 5;
  EnvOptions opts;
  opts.power_policy = PowerPolicyKind::uniform;
  PpoConfig cfg = toy_config();
  cfg.episodes = 0;

  const TrainResult result =
      train([&] { return Env(net, opts); }, cfg, 42);
  CHECK(result.reward_curve.empty());

  Rng rng(42);
  const PolicyParams expected = PolicyParams::init(
      3 * 2 + 2 * 4, 2 * 2, cfg.hidden_units, rng);
  CHECK(result.params.flatten() == expected.flatten());
}

TEST_CASE("train is deterministic for a fixed seed") {
  NetworkConfig net;
  net.n_uavs = 2;
  net.n_gus = 4;
  net.area_side = 50.0;
  net.n_slots = 5;
  EnvOptions opts;
  opts.power_policy = PowerPolicyKind::uniform;
  PpoConfig cfg = toy_config();
  cfg.episodes = 3;

  const TrainResult a = train([&] { return Env(net, opts); }, cfg, 7);
  const TrainResult b = train([&] { return Env(net, opts); }, cfg, 7);
  CHECK(a.reward_curve == b.reward_curve);
  CHECK(a.params.flatten() == b.params.flatten());
  CHECK(a.reward_curve.size() == 3);

  const TrainResult c = train([&] { return Env(net, opts); }, cfg, 8);
  CHECK(c.reward_curve != a.reward_curve);
}

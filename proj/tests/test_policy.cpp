#include "uavsim/policy.hpp"

#include <cmath>

#include "doctest.h"
#include "uavsim/ppo.hpp"

using namespace uavsim;

namespace {

constexpr double kPiThird = 1.0471975511965976;

std::vector<double> random_state(int n, Rng& rng) {
  std::vector<double> s(static_cast<std::size_t>(n));
  for (auto& v : s) v = rng.uniform(0.0, 1.0);
  return s;
}

// Gaussian expectation of a scalar map by Simpson quadrature over +-8 sigma.
double gauss_expect(double mu, double sigma, double (*f)(double)) {
  const int n = 2000;  // even
  const double lo = mu - 8.0 * sigma, hi = mu + 8.0 * sigma;
  const double h = (hi - lo) / n;
  auto phi = [&](double x) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * 3.141592653589793));
  };
  double acc = f(lo) * phi(lo) + f(hi) * phi(hi);
  for (int i = 1; i < n; ++i) {
    const double x = lo + i * h;
    acc += f(x) * phi(x) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("zero parameters produce zero outputs") {
  const PolicyParams p = PolicyParams::zeros(6, 4, 8);
  const std::vector<double> state(6, 0.7);
  const PolicyOutput out = policy_forward(state, p);
  for (double m : out.mean) CHECK(m == 0.0);
  for (double ls : out.log_std) CHECK(ls == 0.0);
  CHECK(out.value == 0.0);
}

TEST_CASE("forward is a pure function of its inputs") {
  Rng rng(2);
  const PolicyParams p = PolicyParams::init(10, 4, 16, rng);
  const auto state = random_state(10, rng);
  const PolicyOutput a = policy_forward(state, p);
  const PolicyOutput b = policy_forward(state, p);
  CHECK(a.mean == b.mean);
  CHECK(a.log_std == b.log_std);
  CHECK(a.value == b.value);

  CHECK_THROWS_AS(policy_forward(random_state(9, rng), p),
                  std::invalid_argument);
}

TEST_CASE("log-std head output is clamped") {
  Rng rng(3);
  PolicyParams p = PolicyParams::init(4, 2, 8, rng);
  for (auto& b : p.ba) b = 50.0;  // drive the heads far out
  const PolicyOutput out = policy_forward(random_state(4, rng), p);
  for (double ls : out.log_std) {
    CHECK(ls <= kLogStdMax);
    CHECK(ls >= kLogStdMin);
  }
}

TEST_CASE("network Jacobian matches finite differences") {
  Rng rng(11);
  const int state_dim = 5, action_dim = 4, hidden = 8;
  PolicyParams p = PolicyParams::init(state_dim, action_dim, hidden, rng);
  const auto state = random_state(state_dim, rng);

  // Random projection of the outputs; its gradient exercises every path.
  std::vector<double> w_mean(4), w_log_std(4);
  for (auto& w : w_mean) w = rng.uniform(-1.0, 1.0);
  for (auto& w : w_log_std) w = rng.uniform(-1.0, 1.0);
  const double w_value = rng.uniform(-1.0, 1.0);

  auto scalar = [&](const PolicyParams& q) {
    const PolicyOutput out = policy_forward(state, q);
    double f = w_value * out.value;
    for (std::size_t i = 0; i < 4; ++i)
      f += w_mean[i] * out.mean[i] + w_log_std[i] * out.log_std[i];
    return f;
  };

  const PolicyParams analytic =
      policy_output_grad(state, p, w_mean, w_log_std, w_value);
  const std::vector<double> ga = analytic.flatten();
  std::vector<double> theta = p.flatten();

  const double eps = 1e-6;
  int checked = 0;
  for (std::size_t i = 0; i < theta.size(); i += 2) {
    PolicyParams hi = p, lo = p;
    std::vector<double> th = theta;
    th[i] = theta[i] + eps;
    hi.unflatten(th);
    th[i] = theta[i] - eps;
    lo.unflatten(th);
    const double fd = (scalar(hi) - scalar(lo)) / (2.0 * eps);
    CHECK(std::abs(fd - ga[i]) <=
          std::max(1e-8, 1e-4 * std::abs(ga[i])));
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("saturated means push actions to the bounds") {
  PolicyOutput out;
  out.mean = {60.0, 60.0};  // one UAV: speed then turn
  out.log_std = {-3.0, -3.0};
  Rng rng(4);
  const ActionSample s = sample_action(out, 5.0, rng);
  CHECK(s.action.a[0] == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(s.action.a[1] == doctest::Approx(kPiThird).epsilon(1e-9));

  out.mean = {-60.0, -60.0};
  const ActionSample t = sample_action(out, 5.0, rng);
  CHECK(t.action.a[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(t.action.a[1] == doctest::Approx(-kPiThird).epsilon(1e-9));
}

TEST_CASE("vanishing spread collapses to the squashed mean") {
  PolicyOutput out;
  out.mean = {0.4, -0.8};
  out.log_std = {-40.0, -40.0};
  Rng rng(5);
  const ActionSample s = sample_action(out, 5.0, rng);
  const EnvAction det = mean_action(out, 5.0);
  CHECK(s.action.a[0] == doctest::Approx(det.a[0]).epsilon(1e-12));
  CHECK(s.action.a[1] == doctest::Approx(det.a[1]).epsilon(1e-12));
  CHECK(det.a[0] == doctest::Approx((std::tanh(0.4) + 1.0) * 2.5));
  CHECK(det.a[1] == doctest::Approx(std::tanh(-0.8) * kPiThird));
}

TEST_CASE("empirical action mean matches quadrature") {
  PolicyOutput out;
  out.mean = {0.3, -0.2};
  out.log_std = {-0.3, -1.0};
  const double v_max = 5.0;

  const int n = 100000;
  Rng rng(6);
  double sum0 = 0.0, sum1 = 0.0, sq0 = 0.0, sq1 = 0.0;
  for (int i = 0; i < n; ++i) {
    const ActionSample s = sample_action(out, v_max, rng);
    sum0 += s.action.a[0];
    sum1 += s.action.a[1];
    sq0 += s.action.a[0] * s.action.a[0];
    sq1 += s.action.a[1] * s.action.a[1];
  }
  const double m0 = sum0 / n, m1 = sum1 / n;
  const double sd0 = std::sqrt(sq0 / n - m0 * m0);
  const double sd1 = std::sqrt(sq1 / n - m1 * m1);

  const double e_tanh0 =
      gauss_expect(out.mean[0], std::exp(out.log_std[0]),
                   [](double u) { return std::tanh(u); });
  const double e_tanh1 =
      gauss_expect(out.mean[1], std::exp(out.log_std[1]),
                   [](double u) { return std::tanh(u); });
  const double expect0 = (e_tanh0 + 1.0) * 0.5 * v_max;
  const double expect1 = e_tanh1 * kPiThird;

  CHECK(std::abs(m0 - expect0) < 3.0 * sd0 / std::sqrt(1.0 * n));
  CHECK(std::abs(m1 - expect1) < 3.0 * sd1 / std::sqrt(1.0 * n));
}

TEST_CASE("action density integrates to one over the box") {
  PolicyOutput out;
  out.mean = {0.1, 0.5};
  out.log_std = {-0.2, -0.7};
  const double v_max = 5.0;
  const double volume = v_max * 2.0 * kPiThird;

  Rng rng(7);
  const int n = 1000000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    EnvAction a;
    a.a = {rng.uniform(1e-9, v_max - 1e-9),
           rng.uniform(-kPiThird + 1e-9, kPiThird - 1e-9)};
    const auto raw = raw_from_action(a, v_max);
    acc += std::exp(action_log_prob(out, raw, v_max));
  }
  const double integral = acc / n * volume;
  CHECK(integral > 0.97);
  CHECK(integral < 1.03);
}

TEST_CASE("squash round-trip") {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> raw = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    const EnvAction a = squash_action(raw, 5.0);
    CHECK(a.a[0] >= 0.0);
    CHECK(a.a[0] <= 5.0);
    CHECK(std::abs(a.a[1]) <= kPiThird);
    const auto back = raw_from_action(a, 5.0);
    CHECK(back[0] == doctest::Approx(raw[0]).epsilon(1e-9));
    CHECK(back[1] == doctest::Approx(raw[1]).epsilon(1e-9));
  }
  EnvAction edge;
  edge.a = {5.0, 0.0};  // exactly on the bound has no finite preimage
  CHECK_THROWS_AS(raw_from_action(edge, 5.0), std::domain_error);
}

TEST_CASE("sampling is deterministic per rng stream") {
  PolicyOutput out;
  out.mean = {0.0, 0.0, 0.3, -0.3};
  out.log_std = {-0.5, -0.5, -0.5, -0.5};
  Rng r1(9), r2(9);
  const auto a = sample_action(out, 5.0, r1);
  const auto b = sample_action(out, 5.0, r2);
  CHECK(a.raw == b.raw);
  CHECK(a.log_prob == b.log_prob);
}

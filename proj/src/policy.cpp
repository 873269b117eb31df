#include "uavsim/policy.hpp"

#include <cmath>
#include <stdexcept>

namespace uavsim {

namespace {

constexpr double kHalfLog2Pi = 0.9189385332046727;  // 0.5 * log(2*pi)
constexpr double kLog2 = 0.6931471805599453;

double softplus(double x) {
  if (x > 30.0) return x;
  if (x < -30.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

// log(1 - tanh(u)^2), evaluated without cancellation.
double log_one_minus_tanh_sq(double u) {
  return 2.0 * (kLog2 - u - softplus(-2.0 * u));
}

double clamp(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

// Per-dimension affine scale from the tanh output to the action box.
double dim_scale(std::size_t dim, double v_max) {
  return (dim % 2 == 0) ? v_max / 2.0 : kMaxTurn;
}

double squash_dim(double u, std::size_t dim, double v_max) {
  const double t = std::tanh(u);
  return (dim % 2 == 0) ? (t + 1.0) * 0.5 * v_max : t * kMaxTurn;
}

}  // namespace

PolicyParams PolicyParams::zeros(int state_dim, int action_dim, int hidden) {
  PolicyParams p;
  p.state_dim = state_dim;
  p.action_dim = action_dim;
  p.hidden = hidden;
  const auto h = static_cast<std::size_t>(hidden);
  const auto s = static_cast<std::size_t>(state_dim);
  const auto a2 = 2 * static_cast<std::size_t>(action_dim);
  p.w1.assign(h * s, 0.0);
  p.b1.assign(h, 0.0);
  p.w2.assign(h * h, 0.0);
  p.b2.assign(h, 0.0);
  p.wa.assign(a2 * h, 0.0);
  p.ba.assign(a2, 0.0);
  p.wv.assign(h, 0.0);
  p.bv.assign(1, 0.0);
  return p;
}

PolicyParams PolicyParams::init(int state_dim, int action_dim, int hidden,
                                Rng& rng) {
  PolicyParams p = zeros(state_dim, action_dim, hidden);
  auto fill = [&rng](std::vector<double>& w, int fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (auto& x : w) x = rng.uniform(-bound, bound);
  };
  fill(p.w1, state_dim);
  fill(p.w2, hidden);
  fill(p.wa, hidden);
  fill(p.wv, hidden);
  return p;
}

std::size_t PolicyParams::size() const {
  return w1.size() + b1.size() + w2.size() + b2.size() + wa.size() +
         ba.size() + wv.size() + bv.size();
}

std::vector<double> PolicyParams::flatten() const {
  std::vector<double> flat;
  flat.reserve(size());
  for (const auto* v : {&w1, &b1, &w2, &b2, &wa, &ba, &wv, &bv})
    flat.insert(flat.end(), v->begin(), v->end());
  return flat;
}

void PolicyParams::unflatten(const std::vector<double>& flat) {
  if (flat.size() != size())
    throw std::invalid_argument("unflatten: size mismatch");
  std::size_t off = 0;
  for (auto* v : {&w1, &b1, &w2, &b2, &wa, &ba, &wv, &bv}) {
    std::copy(flat.begin() + static_cast<std::ptrdiff_t>(off),
              flat.begin() + static_cast<std::ptrdiff_t>(off + v->size()),
              v->begin());
    off += v->size();
  }
}

PolicyOutput policy_forward(const std::vector<double>& state,
                            const PolicyParams& params) {
  if (static_cast<int>(state.size()) != params.state_dim)
    throw std::invalid_argument("policy_forward: state size mismatch");
  const auto h = static_cast<std::size_t>(params.hidden);
  const auto s = static_cast<std::size_t>(params.state_dim);
  const auto a = static_cast<std::size_t>(params.action_dim);

  std::vector<double> h1(h), h2(h);
  for (std::size_t i = 0; i < h; ++i) {
    double z = params.b1[i];
    for (std::size_t j = 0; j < s; ++j) z += params.w1[i * s + j] * state[j];
    h1[i] = std::tanh(z);
  }
  for (std::size_t i = 0; i < h; ++i) {
    double z = params.b2[i];
    for (std::size_t j = 0; j < h; ++j) z += params.w2[i * h + j] * h1[j];
    h2[i] = std::tanh(z);
  }

  PolicyOutput out;
  out.mean.resize(a);
  out.log_std.resize(a);
  for (std::size_t i = 0; i < 2 * a; ++i) {
    double z = params.ba[i];
    for (std::size_t j = 0; j < h; ++j) z += params.wa[i * h + j] * h2[j];
    if (i < a)
      out.mean[i] = z;
    else
      out.log_std[i - a] = clamp(z, kLogStdMin, kLogStdMax);
  }
  double v = params.bv[0];
  for (std::size_t j = 0; j < h; ++j) v += params.wv[j] * h2[j];
  out.value = v;
  return out;
}

EnvAction squash_action(const std::vector<double>& raw, double v_max) {
  EnvAction action;
  action.a.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    action.a[i] = squash_dim(raw[i], i, v_max);
  return action;
}

double action_log_prob(const PolicyOutput& out, const std::vector<double>& raw,
                       double v_max) {
  if (raw.size() != out.mean.size())
    throw std::invalid_argument("action_log_prob: dimension mismatch");
  double logp = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double sigma = std::exp(out.log_std[i]);
    const double z = (raw[i] - out.mean[i]) / sigma;
    logp += -out.log_std[i] - kHalfLog2Pi - 0.5 * z * z;
    logp -= log_one_minus_tanh_sq(raw[i]);
    logp -= std::log(dim_scale(i, v_max));
  }
  return logp;
}

ActionSample sample_action(const PolicyOutput& out, double v_max, Rng& rng) {
  ActionSample sample;
  sample.raw.resize(out.mean.size());
  for (std::size_t i = 0; i < out.mean.size(); ++i)
    sample.raw[i] = out.mean[i] + std::exp(out.log_std[i]) * rng.gaussian();
  sample.action = squash_action(sample.raw, v_max);
  sample.log_prob = action_log_prob(out, sample.raw, v_max);
  return sample;
}

EnvAction mean_action(const PolicyOutput& out, double v_max) {
  return squash_action(out.mean, v_max);
}

std::vector<double> raw_from_action(const EnvAction& action, double v_max) {
  std::vector<double> raw(action.a.size());
  for (std::size_t i = 0; i < action.a.size(); ++i) {
    const double t = (i % 2 == 0) ? 2.0 * action.a[i] / v_max - 1.0
                                  : action.a[i] / kMaxTurn;
    if (!(t > -1.0 && t < 1.0))
      throw std::domain_error("raw_from_action: action on or outside bounds");
    raw[i] = 0.5 * std::log((1.0 + t) / (1.0 - t));
  }
  return raw;
}

}  // namespace uavsim

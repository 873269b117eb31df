#include "uavsim/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace uavsim {

namespace {

constexpr double kEntropyConst = 1.4189385332046727;  // 0.5 * log(2*pi*e)

struct ForwardCache {
  std::vector<double> x, h1, h2;
  std::vector<double> actor_z;  // pre-clamp head outputs, size 2*action_dim
  PolicyOutput out;
};

ForwardCache forward_cached(const std::vector<double>& state,
                            const PolicyParams& p) {
  const auto h = static_cast<std::size_t>(p.hidden);
  const auto s = static_cast<std::size_t>(p.state_dim);
  const auto a = static_cast<std::size_t>(p.action_dim);

  ForwardCache c;
  c.x = state;
  c.h1.resize(h);
  c.h2.resize(h);
  c.actor_z.resize(2 * a);
  for (std::size_t i = 0; i < h; ++i) {
    double z = p.b1[i];
    for (std::size_t j = 0; j < s; ++j) z += p.w1[i * s + j] * state[j];
    c.h1[i] = std::tanh(z);
  }
  for (std::size_t i = 0; i < h; ++i) {
    double z = p.b2[i];
    for (std::size_t j = 0; j < h; ++j) z += p.w2[i * h + j] * c.h1[j];
    c.h2[i] = std::tanh(z);
  }
  c.out.mean.resize(a);
  c.out.log_std.resize(a);
  for (std::size_t i = 0; i < 2 * a; ++i) {
    double z = p.ba[i];
    for (std::size_t j = 0; j < h; ++j) z += p.wa[i * h + j] * c.h2[j];
    c.actor_z[i] = z;
    if (i < a)
      c.out.mean[i] = z;
    else
      c.out.log_std[i - a] =
          std::min(kLogStdMax, std::max(kLogStdMin, z));
  }
  double v = p.bv[0];
  for (std::size_t j = 0; j < h; ++j) v += p.wv[j] * c.h2[j];
  c.out.value = v;
  return c;
}

// Accumulate parameter gradients for one sample given gradients on the head
// outputs. The log-std clamp gates its gradient.
void backward(const PolicyParams& p, const ForwardCache& c,
              const std::vector<double>& d_mean,
              const std::vector<double>& d_log_std, double d_value,
              PolicyParams& g) {
  const auto h = static_cast<std::size_t>(p.hidden);
  const auto s = static_cast<std::size_t>(p.state_dim);
  const auto a = static_cast<std::size_t>(p.action_dim);

  std::vector<double> dh2(h, 0.0);
  for (std::size_t i = 0; i < 2 * a; ++i) {
    double dz;
    if (i < a) {
      dz = d_mean[i];
    } else {
      const double z = c.actor_z[i];
      dz = (z > kLogStdMin && z < kLogStdMax) ? d_log_std[i - a] : 0.0;
    }
    if (dz == 0.0) continue;
    for (std::size_t j = 0; j < h; ++j) {
      g.wa[i * h + j] += dz * c.h2[j];
      dh2[j] += p.wa[i * h + j] * dz;
    }
    g.ba[i] += dz;
  }
  if (d_value != 0.0) {
    for (std::size_t j = 0; j < h; ++j) {
      g.wv[j] += d_value * c.h2[j];
      dh2[j] += p.wv[j] * d_value;
    }
    g.bv[0] += d_value;
  }

  std::vector<double> dh1(h, 0.0);
  for (std::size_t i = 0; i < h; ++i) {
    const double dz = dh2[i] * (1.0 - c.h2[i] * c.h2[i]);
    if (dz == 0.0) continue;
    for (std::size_t j = 0; j < h; ++j) {
      g.w2[i * h + j] += dz * c.h1[j];
      dh1[j] += p.w2[i * h + j] * dz;
    }
    g.b2[i] += dz;
  }
  for (std::size_t i = 0; i < h; ++i) {
    const double dz = dh1[i] * (1.0 - c.h1[i] * c.h1[i]);
    if (dz == 0.0) continue;
    for (std::size_t j = 0; j < s; ++j) g.w1[i * s + j] += dz * c.x[j];
    g.b1[i] += dz;
  }
}

void axpy(std::vector<double>& y, double alpha, const std::vector<double>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

struct BatchTotals {
  double objective = 0.0;
  double clip_term = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clipped = 0.0;
};

// Sums the maximization objective and its gradient over the given samples.
BatchTotals accumulate_objective(const TrajectoryMemory& memory,
                                 const std::size_t* idx, std::size_t count,
                                 const std::vector<double>& advantages,
                                 const std::vector<double>& returns,
                                 const PolicyParams& params,
                                 const PpoConfig& cfg, double v_max,
                                 PolicyParams* grads) {
  BatchTotals totals;
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t i = idx[s];
    const Transition& tr = memory.steps[i];
    const double adv = advantages[i];
    const double ret = returns[i];

    const ForwardCache c = forward_cached(tr.state, params);
    const double logp_new = action_log_prob(c.out, tr.raw_action, v_max);
    const double ratio = prob_ratio(logp_new, tr.log_prob);

    const double unclipped = ratio * adv;
    const double clip_term = clipped_objective(ratio, adv, cfg.clip_epsilon);
    const bool clipped = clip_term < unclipped;

    const double verr = c.out.value - ret;
    double entropy = 0.0;
    for (double ls : c.out.log_std) entropy += ls + kEntropyConst;

    totals.clip_term += clip_term;
    totals.value_loss += verr * verr;
    totals.entropy += entropy;
    totals.clipped += clipped ? 1.0 : 0.0;
    totals.objective += clip_term - cfg.value_loss_weight * verr * verr +
                        cfg.entropy_weight * entropy;

    if (grads) {
      const double d_logp = clipped ? 0.0 : unclipped;
      const auto a = static_cast<std::size_t>(params.action_dim);
      std::vector<double> d_mean(a, 0.0), d_log_std(a, 0.0);
      for (std::size_t j = 0; j < a; ++j) {
        const double sigma = std::exp(c.out.log_std[j]);
        const double z = (tr.raw_action[j] - c.out.mean[j]) / sigma;
        d_mean[j] = d_logp * z / sigma;
        d_log_std[j] = d_logp * (z * z - 1.0) + cfg.entropy_weight;
      }
      const double d_value = -2.0 * cfg.value_loss_weight * verr;
      backward(params, c, d_mean, d_log_std, d_value, *grads);
    }
  }
  return totals;
}

}  // namespace

void PpoConfig::validate() const {
  if (!(clip_epsilon > 0.0 && clip_epsilon < 1.0))
    throw ConfigError("clip_epsilon must be in (0, 1)");
  if (!(discount > 0.0 && discount <= 1.0))
    throw ConfigError("discount must be in (0, 1]");
  if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0))
    throw ConfigError("gae_lambda must be in [0, 1]");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (minibatch_size < 1) throw ConfigError("minibatch_size must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (episodes < 0) throw ConfigError("episodes must be >= 0");
  if (actors < 1) throw ConfigError("actors must be >= 1");
  if (hidden_units < 1) throw ConfigError("hidden_units must be >= 1");
  if (!(value_loss_weight >= 0.0) || !(entropy_weight >= 0.0))
    throw ConfigError("loss weights must be >= 0");
}

void gae(const std::vector<double>& rewards, const std::vector<double>& values,
         const std::vector<bool>& dones, double discount, double lambda,
         std::vector<double>& advantages, std::vector<double>& returns) {
  const std::size_t T = rewards.size();
  if (values.size() != T + 1)
    throw std::invalid_argument("gae: values must have one bootstrap entry");
  if (dones.size() != T)
    throw std::invalid_argument("gae: dones length mismatch");

  advantages.assign(T, 0.0);
  returns.assign(T, 0.0);
  double carry = 0.0;
  for (std::size_t n = T; n-- > 0;) {
    const double nonterminal = dones[n] ? 0.0 : 1.0;
    const double delta =
        rewards[n] + discount * values[n + 1] * nonterminal - values[n];
    carry = delta + discount * lambda * nonterminal * carry;
    advantages[n] = carry;
    returns[n] = advantages[n] + values[n];
  }
}

double clipped_objective(double ratio, double advantage, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("clipped_objective: eps must be in (0, 1)");
  const double clipped =
      std::min(1.0 + eps, std::max(1.0 - eps, ratio)) * advantage;
  return std::min(ratio * advantage, clipped);
}

UpdateStats ppo_update(TrajectoryMemory& memory, PolicyParams& params,
                       const PpoConfig& cfg, double v_max, Rng& rng,
                       AdamState* adam) {
  cfg.validate();
  const std::size_t T = memory.size();
  if (T == 0) throw std::invalid_argument("ppo_update: empty memory");

  std::vector<double> rewards(T), values(T + 1, 0.0);
  std::vector<bool> dones(T);
  for (std::size_t n = 0; n < T; ++n) {
    rewards[n] = memory.steps[n].reward;
    values[n] = memory.steps[n].value;
    dones[n] = memory.steps[n].done;
  }

  std::vector<double> advantages, returns;
  gae(rewards, values, dones, cfg.discount, cfg.gae_lambda, advantages,
      returns);

  if (cfg.normalize_advantages) {
    double mean = 0.0;
    for (double a : advantages) mean += a;
    mean /= static_cast<double>(T);
    double var = 0.0;
    for (double a : advantages) var += (a - mean) * (a - mean);
    const double stddev = std::sqrt(var / static_cast<double>(T));
    for (double& a : advantages) a = (a - mean) / (stddev + 1e-8);
  }

  AdamState local_adam;
  AdamState* opt = adam ? adam : &local_adam;
  if (cfg.optimizer == PpoConfig::Optimizer::adam && opt->m.empty()) {
    opt->m.assign(params.size(), 0.0);
    opt->v.assign(params.size(), 0.0);
    opt->t = 0;
  }

  UpdateStats stats;
  std::vector<std::size_t> order(T);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t batch =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.minibatch_size), T);

  double stat_weight = 0.0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < T; start += batch) {
      const std::size_t end = std::min(T, start + batch);
      const auto n_mb = static_cast<double>(end - start);
      PolicyParams grads = PolicyParams::zeros(params.state_dim,
                                               params.action_dim,
                                               params.hidden);
      const BatchTotals totals = accumulate_objective(
          memory, order.data() + start, end - start, advantages, returns,
          params, cfg, v_max, &grads);

      if (!std::isfinite(totals.objective))
        throw std::runtime_error(
            "ppo_update: non-finite loss (clip=" +
            std::to_string(totals.clip_term) +
            ", value_loss=" + std::to_string(totals.value_loss) + ")");

      std::vector<double> flat = grads.flatten();
      for (double& gi : flat) gi /= n_mb;

      std::vector<double> theta = params.flatten();
      if (cfg.optimizer == PpoConfig::Optimizer::adam) {
        opt->t += 1;
        const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
        const double bc1 = 1.0 - std::pow(b1, static_cast<double>(opt->t));
        const double bc2 = 1.0 - std::pow(b2, static_cast<double>(opt->t));
        for (std::size_t i = 0; i < flat.size(); ++i) {
          opt->m[i] = b1 * opt->m[i] + (1.0 - b1) * flat[i];
          opt->v[i] = b2 * opt->v[i] + (1.0 - b2) * flat[i] * flat[i];
          theta[i] += cfg.learning_rate * (opt->m[i] / bc1) /
                      (std::sqrt(opt->v[i] / bc2) + eps);
        }
      } else {
        axpy(theta, cfg.learning_rate, flat);
      }
      for (double th : theta)
        if (!std::isfinite(th))
          throw std::runtime_error("ppo_update: non-finite parameter update");
      params.unflatten(theta);

      stats.policy_objective += totals.clip_term;
      stats.value_loss += totals.value_loss;
      stats.entropy += totals.entropy;
      stats.clip_fraction += totals.clipped;
      stat_weight += n_mb;
      stats.minibatches += 1;
    }
  }
  if (stat_weight > 0.0) {
    stats.policy_objective /= stat_weight;
    stats.value_loss /= stat_weight;
    stats.entropy /= stat_weight;
    stats.clip_fraction /= stat_weight;
  }
  memory.clear();
  return stats;
}

double ppo_objective(const TrajectoryMemory& memory,
                     const std::vector<double>& advantages,
                     const std::vector<double>& returns,
                     const PolicyParams& params, const PpoConfig& cfg,
                     double v_max, PolicyParams* grads) {
  const std::size_t T = memory.size();
  if (T == 0) throw std::invalid_argument("ppo_objective: empty memory");
  if (advantages.size() != T || returns.size() != T)
    throw std::invalid_argument("ppo_objective: advantage/return mismatch");
  if (grads)
    *grads = PolicyParams::zeros(params.state_dim, params.action_dim,
                                 params.hidden);
  std::vector<std::size_t> idx(T);
  std::iota(idx.begin(), idx.end(), 0);
  const BatchTotals totals =
      accumulate_objective(memory, idx.data(), T, advantages, returns, params,
                           cfg, v_max, grads);
  if (grads) {
    std::vector<double> flat = grads->flatten();
    for (double& g : flat) g /= static_cast<double>(T);
    grads->unflatten(flat);
  }
  return totals.objective / static_cast<double>(T);
}

PolicyParams policy_output_grad(const std::vector<double>& state,
                                const PolicyParams& params,
                                const std::vector<double>& w_mean,
                                const std::vector<double>& w_log_std,
                                double w_value) {
  const auto a = static_cast<std::size_t>(params.action_dim);
  if (w_mean.size() != a || w_log_std.size() != a)
    throw std::invalid_argument("policy_output_grad: weight size mismatch");
  PolicyParams grads =
      PolicyParams::zeros(params.state_dim, params.action_dim, params.hidden);
  const ForwardCache c = forward_cached(state, params);
  backward(params, c, w_mean, w_log_std, w_value, grads);
  return grads;
}

TrainResult train(const EnvFactory& make_env, const PpoConfig& cfg,
                  std::uint64_t seed, const ProgressFn& progress) {
  cfg.validate();
  Rng master(seed);

  std::vector<Env> envs;
  envs.reserve(static_cast<std::size_t>(cfg.actors));
  for (int a = 0; a < cfg.actors; ++a) envs.push_back(make_env());

  const int state_dim = envs.front().state_size();
  const int action_dim = envs.front().action_size();
  const double v_max = envs.front().network().v_max;

  TrainResult result;
  result.params =
      PolicyParams::init(state_dim, action_dim, cfg.hidden_units, master);

  TrajectoryMemory memory;
  AdamState adam;
  for (long e = 0; e < cfg.episodes; ++e) {
    // One scenario per episode, explored by all actors.
    const std::uint64_t scenario_seed = master.child_seed();
    memory.clear();
    double episode_reward = 0.0;
    for (auto& env : envs) {
      Rng actor_rng(master.child_seed());
      std::vector<double> state = env.reset(scenario_seed);
      bool done = false;
      double cumulative = 0.0;
      while (!done) {
        const PolicyOutput out = policy_forward(state, result.params);
        const ActionSample sample = sample_action(out, v_max, actor_rng);
        const StepOutcome step = env.step(sample.action);
        memory.steps.push_back({state, sample.raw, sample.log_prob,
                                step.reward, out.value, step.done});
        cumulative += step.reward;
        state = step.next_state;
        done = step.done;
      }
      episode_reward += cumulative;
    }
    episode_reward /= static_cast<double>(cfg.actors);
    result.reward_curve.push_back(episode_reward);

    Rng update_rng(master.child_seed());
    ppo_update(memory, result.params, cfg, v_max, update_rng, &adam);
    if (progress) progress(e, episode_reward);
  }
  return result;
}

}  // namespace uavsim

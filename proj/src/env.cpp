#include "uavsim/env.hpp"

#include <cmath>
#include <stdexcept>

#include "uavsim/channel.hpp"
#include "uavsim/clustering.hpp"
#include "uavsim/constraints.hpp"

namespace uavsim {

namespace {

constexpr double kPi = 3.141592653589793;

double wrap_angle(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w - kPi;
}

double clamp(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

}  // namespace

std::vector<Vec3> default_uav_start(const NetworkConfig& cfg) {
  std::vector<Vec3> pos(static_cast<std::size_t>(cfg.n_uavs));
  for (int k = 0; k < cfg.n_uavs; ++k) {
    pos[static_cast<std::size_t>(k)] = {
        cfg.area_side * static_cast<double>(k + 1) /
            static_cast<double>(cfg.n_uavs + 1),
        cfg.area_side / 2.0, cfg.uav_altitude};
  }
  return pos;
}

Topology initial_topology(const NetworkConfig& cfg, Rng& rng) {
  Topology topo;
  topo.uav_pos = default_uav_start(cfg);
  topo.uav_heading.assign(static_cast<std::size_t>(cfg.n_uavs), 0.0);
  topo.gu_pos.resize(static_cast<std::size_t>(cfg.n_gus));
  for (auto& gu : topo.gu_pos) {
    gu.x = rng.uniform(0.0, cfg.area_side);
    gu.y = rng.uniform(0.0, cfg.area_side);
  }
  return topo;
}

double raw_reward(const Topology& topo, const Association& assoc,
                  const PowerAllocation& powers, const NetworkConfig& cfg,
                  double reward_scale) {
  return network_sum_rate(topo, assoc, powers, cfg) * reward_scale;
}

PowerAllocation random_power(const Association& assoc,
                             const NetworkConfig& cfg, Rng& rng) {
  PowerAllocation p(assoc.n_uavs, assoc.n_gus());
  for (int k = 0; k < assoc.n_uavs; ++k) {
    const auto cluster = assoc.members(k);
    if (cluster.empty()) continue;
    std::vector<double> draw(cluster.size());
    double total = 0.0;
    for (auto& d : draw) {
      d = rng.uniform01();
      total += d;
    }
    // Rescale so the budget binds with equality; degenerate all-zero draws
    // fall back to an even split.
    for (std::size_t i = 0; i < cluster.size(); ++i) {
      const double share =
          total > 0.0 ? draw[i] / total : 1.0 / static_cast<double>(cluster.size());
      p.at(k, cluster[i]) = cfg.p_max * share;
    }
  }
  return p;
}

Env::Env(NetworkConfig net, EnvOptions opt)
    : net_(std::move(net)), opt_(std::move(opt)) {
  net_.validate();
}

std::vector<double> Env::reset(std::uint64_t seed) {
  rng_ = Rng(seed);
  topo_ = initial_topology(net_, rng_);

  std::vector<Vec2> centroids(static_cast<std::size_t>(net_.n_uavs));
  for (int k = 0; k < net_.n_uavs; ++k)
    centroids[static_cast<std::size_t>(k)] = {
        topo_.uav_pos[static_cast<std::size_t>(k)].x,
        topo_.uav_pos[static_cast<std::size_t>(k)].y};
  assoc_ = bkmc(topo_.gu_pos, std::move(centroids), opt_.bkmc_max_iters).assoc;

  last_power_ = PowerAllocation(net_.n_uavs, net_.n_gus);
  slot_ = 1;
  done_ = false;
  trace_.clear();
  return state();
}

std::vector<double> Env::state() const {
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(state_size()));
  for (const auto& q : topo_.uav_pos) {
    s.push_back(q.x / net_.area_side);
    s.push_back(q.y / net_.area_side);
    s.push_back(q.z / net_.uav_altitude);
  }
  for (const auto& o : topo_.gu_pos) {
    s.push_back(o.x / net_.area_side);
    s.push_back(o.y / net_.area_side);
  }
  return s;
}

PowerAllocation Env::allocate_power() {
  if (power_fn_) return power_fn_(topo_, assoc_, net_, rng_);
  switch (opt_.power_policy) {
    case PowerPolicyKind::uniform:
      return uniform_power(assoc_, net_);
    case PowerPolicyKind::random:
      return random_power(assoc_, net_, rng_);
    case PowerPolicyKind::sca:
      return sca(uniform_power(assoc_, net_), topo_, assoc_, net_, opt_.sca)
          .first;
  }
  return uniform_power(assoc_, net_);
}

StepOutcome Env::step(const EnvAction& action) {
  if (done_) throw std::logic_error("step: episode already finished");
  if (static_cast<int>(action.a.size()) != action_size())
    throw std::invalid_argument("step: action size mismatch");

  std::vector<double> applied_v(static_cast<std::size_t>(net_.n_uavs));
  std::vector<double> applied_turn(static_cast<std::size_t>(net_.n_uavs));
  for (int k = 0; k < net_.n_uavs; ++k) {
    const double v = clamp(action.speed(k), 0.0, net_.v_max);
    const double turn = clamp(action.turn(k), -kMaxTurn, kMaxTurn);
    applied_v[static_cast<std::size_t>(k)] = v;
    applied_turn[static_cast<std::size_t>(k)] = turn;

    auto& heading = topo_.uav_heading[static_cast<std::size_t>(k)];
    heading = wrap_angle(heading + turn);
    auto& q = topo_.uav_pos[static_cast<std::size_t>(k)];
    q.x = clamp(q.x + v * net_.slot_duration * std::cos(heading), 0.0,
                net_.area_side);
    q.y = clamp(q.y + v * net_.slot_duration * std::sin(heading), 0.0,
                net_.area_side);
  }

  last_power_ = allocate_power();

  StepOutcome out;
  out.info.per_uav_rate.resize(static_cast<std::size_t>(net_.n_uavs));
  for (int k = 0; k < net_.n_uavs; ++k) {
    out.info.per_uav_rate[static_cast<std::size_t>(k)] =
        uav_slot_rate(k, topo_, assoc_, last_power_, net_);
    out.info.sum_rate += out.info.per_uav_rate[static_cast<std::size_t>(k)];
  }
  out.info.separation_violation = !separation_ok(topo_, net_);

  if (out.info.separation_violation) {
    out.reward = -2.0;
    out.done = opt_.terminate_on_violation || slot_ == net_.n_slots;
  } else if (slot_ == net_.n_slots) {
    out.reward = 2.0;
    out.done = true;
  } else {
    out.reward = out.info.sum_rate * opt_.reward_scale;
    out.done = false;
  }

  for (int k = 0; k < net_.n_uavs; ++k) {
    const auto& q = topo_.uav_pos[static_cast<std::size_t>(k)];
    trace_.push_back({slot_, k, q.x, q.y, q.z,
                      applied_v[static_cast<std::size_t>(k)],
                      applied_turn[static_cast<std::size_t>(k)], out.reward});
  }

  if (out.done)
    done_ = true;
  else
    ++slot_;
  out.next_state = state();
  return out;
}

}  // namespace uavsim

#include "uavsim/constraints.hpp"

#include <algorithm>
#include <stdexcept>

#include "uavsim/channel.hpp"

namespace uavsim {

namespace {
constexpr double kSlack = 1e-9;
}

std::string to_string(Constraint c) {
  switch (c) {
    case Constraint::min_rate: return "min_rate";
    case Constraint::association: return "association";
    case Constraint::power_budget: return "power_budget";
    case Constraint::power_box: return "power_box";
    case Constraint::min_separation: return "min_separation";
    case Constraint::max_speed: return "max_speed";
  }
  return "?";
}

bool separation_ok(const Topology& topo, const NetworkConfig& cfg) {
  const int K = topo.n_uavs();
  for (int i = 0; i < K; ++i)
    for (int j = i + 1; j < K; ++j)
      if (dist(topo.uav_pos[static_cast<std::size_t>(i)],
               topo.uav_pos[static_cast<std::size_t>(j)]) < cfg.d_min)
        return false;
  return true;
}

ViolationReport check_constraints(const std::vector<Topology>& slots,
                                  const Association& assoc,
                                  const std::vector<PowerAllocation>& powers,
                                  const NetworkConfig& cfg) {
  if (slots.empty())
    throw std::invalid_argument("check_constraints: no slots given");
  if (powers.size() != slots.size())
    throw std::invalid_argument(
        "check_constraints: one power allocation per slot required");

  ViolationReport report;
  const int K = cfg.n_uavs;
  const int M = cfg.n_gus;

  // Association well-formedness is slot-independent. A broken association
  // leaves bandwidth shares undefined, so rate checks are skipped then.
  bool assoc_ok = true;
  for (int m = 0; m < M; ++m) {
    const int k = assoc.assign.at(static_cast<std::size_t>(m));
    if (k < 0 || k >= K) {
      report.items.push_back({Constraint::association, 0, m, -1});
      assoc_ok = false;
    }
  }

  for (std::size_t n = 0; n < slots.size(); ++n) {
    const Topology& topo = slots[n];
    const PowerAllocation& p = powers[n];
    const int slot = static_cast<int>(n);

    // Per-link QoS floor, evaluated with powers clipped into the box so an
    // infeasible allocation still yields a complete report.
    if (assoc_ok) {
      PowerAllocation sane = p;
      for (double& w : sane.v) w = std::max(0.0, w);
      for (int m = 0; m < M; ++m) {
        const int k = assoc.assign[static_cast<std::size_t>(m)];
        if (link_rate_at(k, m, topo, assoc, sane, cfg) < cfg.r_min)
          report.items.push_back({Constraint::min_rate, slot, k, m});
      }
    }

    // Power box and budget.
    for (int k = 0; k < K; ++k) {
      for (int m = 0; m < M; ++m) {
        const double pw = p.at(k, m);
        if (pw < -kSlack || pw > cfg.p_max + kSlack)
          report.items.push_back({Constraint::power_box, slot, k, m});
      }
      if (p.uav_total(k) > cfg.p_max + kSlack)
        report.items.push_back({Constraint::power_budget, slot, k, -1});
    }

    // Pairwise separation.
    for (int i = 0; i < K; ++i)
      for (int j = i + 1; j < K; ++j)
        if (dist(topo.uav_pos[static_cast<std::size_t>(i)],
                 topo.uav_pos[static_cast<std::size_t>(j)]) < cfg.d_min)
          report.items.push_back({Constraint::min_separation, slot, i, j});

    // Speed between consecutive slots.
    if (n > 0) {
      const Topology& prev = slots[n - 1];
      for (int k = 0; k < K; ++k) {
        const double moved = dist(prev.uav_pos[static_cast<std::size_t>(k)],
                                  topo.uav_pos[static_cast<std::size_t>(k)]);
        if (moved / cfg.slot_duration > cfg.v_max + kSlack)
          report.items.push_back({Constraint::max_speed, slot, k, -1});
      }
    }
  }
  return report;
}

}  // namespace uavsim

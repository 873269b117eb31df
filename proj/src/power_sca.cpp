#include "uavsim/power_sca.hpp"

#include <cmath>
#include <stdexcept>

#include "uavsim/channel.hpp"

namespace uavsim {

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct LinkTerms {
  std::vector<std::pair<int, int>> links;  // associated (k, m) pairs
  std::vector<double> noise;               // per link, W
  std::vector<double> denom;               // psi + noise at the anchor, W
};

double noise_term(int k, int m, const Topology& topo, const Association& assoc,
                  const NetworkConfig& cfg) {
  const double bw = bandwidth_share(assoc, cfg, k);
  const double d = link_distance(topo.uav_pos[static_cast<std::size_t>(k)],
                                 topo.gu_pos[static_cast<std::size_t>(m)]);
  return bw * d * d * std::exp(cfg.carrier_absorption * d) *
         cfg.noise_psd_w_hz();
}

LinkTerms link_terms(const PowerAllocation& p, const Topology& topo,
                     const Association& assoc, const NetworkConfig& cfg) {
  LinkTerms t;
  for (int m = 0; m < assoc.n_gus(); ++m) {
    const int k = assoc.assign[static_cast<std::size_t>(m)];
    t.links.emplace_back(k, m);
    t.noise.push_back(noise_term(k, m, topo, assoc, cfg));
    t.denom.push_back(interference(k, m, topo, assoc, p, cfg) + t.noise.back());
  }
  return t;
}

double l_part(const PowerAllocation& p, const Association& assoc,
              const NetworkConfig& cfg) {
  const double h0 = cfg.ref_gain_linear();
  double l = 0.0;
  for (int m = 0; m < assoc.n_gus(); ++m) {
    const int k = assoc.assign[static_cast<std::size_t>(m)];
    const double pw = p.at(k, m);
    if (!(pw > 0.0))
      throw std::domain_error("dc objective: associated link power must be > 0");
    l += std::log2(pw * h0);
  }
  return l;
}

}  // namespace

DcParts dc_parts(const PowerAllocation& p, const Topology& topo,
                 const Association& assoc, const NetworkConfig& cfg) {
  DcParts parts;
  parts.l = l_part(p, assoc, cfg);
  const LinkTerms t = link_terms(p, topo, assoc, cfg);
  for (double denom : t.denom) parts.h += std::log2(denom);
  return parts;
}

LinkGrid grad_h(const PowerAllocation& anchor, const Topology& topo,
                const Association& assoc, const NetworkConfig& cfg) {
  const int K = topo.n_uavs();
  const int M = topo.n_gus();
  LinkGrid grad(K, M);
  const LinkTerms t = link_terms(anchor, topo, assoc, cfg);

  // d h / d p_{k,m}: each interference-plus-noise term containing p_{k,m}
  // contributes gain / (ln2 * term).
  for (int m = 0; m < M; ++m) {
    const int k = assoc.assign[static_cast<std::size_t>(m)];
    double g = 0.0;
    if (cfg.interference_mode == InterferenceMode::literal) {
      const double own_gain = channel_gain(
          link_distance(topo.uav_pos[static_cast<std::size_t>(k)],
                        topo.gu_pos[static_cast<std::size_t>(m)]),
          cfg.carrier_absorption);
      for (std::size_t i = 0; i < t.links.size(); ++i) {
        const auto [ko, mo] = t.links[i];
        if (ko == k || mo == m) continue;
        g += own_gain / (kLn2 * t.denom[i]);
      }
    } else {
      for (std::size_t i = 0; i < t.links.size(); ++i) {
        const auto [ko, mo] = t.links[i];
        if (ko == k) continue;
        const double gain_to_victim = channel_gain(
            link_distance(topo.uav_pos[static_cast<std::size_t>(k)],
                          topo.gu_pos[static_cast<std::size_t>(mo)]),
            cfg.carrier_absorption);
        g += gain_to_victim / (kLn2 * t.denom[i]);
      }
    }
    grad.at(k, m) = g;
  }
  return grad;
}

SurrogateModel build_surrogate(const PowerAllocation& anchor,
                               const Topology& topo, const Association& assoc,
                               const NetworkConfig& cfg) {
  SurrogateModel model;
  model.anchor = anchor;
  model.grad = grad_h(anchor, topo, assoc, cfg);
  model.h_at_anchor = dc_parts(anchor, topo, assoc, cfg).h;
  return model;
}

double surrogate_value(const PowerAllocation& p, const SurrogateModel& model,
                       const Topology& topo, const Association& assoc,
                       const NetworkConfig& cfg) {
  (void)topo;
  double value = l_part(p, assoc, cfg) - model.h_at_anchor;
  for (int m = 0; m < assoc.n_gus(); ++m) {
    const int k = assoc.assign[static_cast<std::size_t>(m)];
    value -= model.grad.at(k, m) * (p.at(k, m) - model.anchor.at(k, m));
  }
  return value;
}

std::vector<double> waterfill(const std::vector<double>& g, double budget,
                              double* mu_out) {
  if (!(budget > 0.0))
    throw std::invalid_argument("waterfill: budget must be > 0");
  for (double gi : g)
    if (gi < 0.0 || !std::isfinite(gi))
      throw std::invalid_argument("waterfill: price must be finite and >= 0");

  auto level = [&](double mu) {
    std::vector<double> p(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double denom = kLn2 * (g[i] + mu);
      p[i] = denom > 0.0 ? std::min(budget, 1.0 / denom) : budget;
    }
    return p;
  };
  auto total = [](const std::vector<double>& p) {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
  };

  std::vector<double> p = level(0.0);
  double mu = 0.0;
  if (total(p) > budget) {
    double lo = 0.0, hi = 1.0;
    while (total(level(hi)) > budget) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (total(level(mid)) > budget)
        lo = mid;
      else
        hi = mid;
    }
    mu = hi;
    p = level(mu);
  }
  if (mu_out) *mu_out = mu;
  return p;
}

PowerAllocation inner_solve(const SurrogateModel& model,
                            const Association& assoc,
                            const NetworkConfig& cfg) {
  PowerAllocation out(assoc.n_uavs, assoc.n_gus());
  for (int k = 0; k < assoc.n_uavs; ++k) {
    const std::vector<int> cluster = assoc.members(k);
    if (cluster.empty()) continue;
    std::vector<double> g;
    g.reserve(cluster.size());
    for (int m : cluster) g.push_back(model.grad.at(k, m));
    const std::vector<double> p = waterfill(g, cfg.p_max);
    for (std::size_t i = 0; i < cluster.size(); ++i)
      out.at(k, cluster[i]) = p[i];
  }
  return out;
}

std::pair<PowerAllocation, ScaReport> sca(const PowerAllocation& p0,
                                          const Topology& topo,
                                          const Association& assoc,
                                          const NetworkConfig& cfg,
                                          const ScaOptions& opt) {
  PowerAllocation p = p0;
  ScaReport report;
  double objective = dc_parts(p, topo, assoc, cfg).objective();
  report.objective_trace.push_back(objective);
  report.sum_rate_trace.push_back(network_sum_rate(topo, assoc, p, cfg));

  for (int it = 0; it < opt.max_outer; ++it) {
    const SurrogateModel model = build_surrogate(p, topo, assoc, cfg);
    p = inner_solve(model, assoc, cfg);
    const double next = dc_parts(p, topo, assoc, cfg).objective();
    report.iterations = it + 1;
    report.final_e = std::abs(next - objective);
    objective = next;
    report.objective_trace.push_back(objective);
    report.sum_rate_trace.push_back(network_sum_rate(topo, assoc, p, cfg));
    if (report.final_e < opt.tol) {
      report.converged = true;
      break;
    }
  }
  return {std::move(p), std::move(report)};
}

PowerAllocation uniform_power(const Association& assoc,
                              const NetworkConfig& cfg) {
  PowerAllocation p(assoc.n_uavs, assoc.n_gus());
  const auto sizes = assoc.cluster_sizes();
  for (int m = 0; m < assoc.n_gus(); ++m) {
    const int k = assoc.assign[static_cast<std::size_t>(m)];
    p.at(k, m) = cfg.p_max / static_cast<double>(
                                 sizes[static_cast<std::size_t>(k)]);
  }
  return p;
}

}  // namespace uavsim

#pragma once

#include <utility>
#include <vector>

#include "uavsim/types.hpp"

namespace uavsim {

// The two concave halves of the power-allocation objective, evaluated over
// associated links: l sums log2 of the received signal terms, h sums log2 of
// the interference-plus-noise terms. The objective is l - h, a high-SINR
// surrogate of the true sum rate.
struct DcParts {
  double l = 0.0;
  double h = 0.0;
  double objective() const { return l - h; }
};

// Throws std::domain_error when an associated link's power is <= 0.
DcParts dc_parts(const PowerAllocation& p, const Topology& topo,
                 const Association& assoc, const NetworkConfig& cfg);

// Analytic gradient of the h part with respect to each associated link power.
// Entries off associated links are zero.
LinkGrid grad_h(const PowerAllocation& anchor, const Topology& topo,
                const Association& assoc, const NetworkConfig& cfg);

// Linearization of h around an anchor allocation.
struct SurrogateModel {
  PowerAllocation anchor;
  LinkGrid grad;
  double h_at_anchor = 0.0;
};

SurrogateModel build_surrogate(const PowerAllocation& anchor,
                               const Topology& topo, const Association& assoc,
                               const NetworkConfig& cfg);

// l(p) - [h(p') + grad . (p - p')]; touches the true objective at p = p' and
// lower-bounds it elsewhere.
double surrogate_value(const PowerAllocation& p, const SurrogateModel& model,
                       const Topology& topo, const Association& assoc,
                       const NetworkConfig& cfg);

// Maximize sum_m [log2(p_m) - g_m p_m] subject to sum p <= budget and
// 0 <= p_m <= budget. Closed-form water level found by dual bisection; the
// multiplier is reported through mu_out when non-null.
std::vector<double> waterfill(const std::vector<double>& g, double budget,
                              double* mu_out = nullptr);

// Per-UAV water-filling against the surrogate model. The result satisfies
// the box and budget constraints with KKT residuals below 1e-8.
PowerAllocation inner_solve(const SurrogateModel& model,
                            const Association& assoc,
                            const NetworkConfig& cfg);

struct ScaOptions {
  double tol = 1e-3;   // stop when |objective delta| < tol
  int max_outer = 50;  // outer iteration budget
};

struct ScaReport {
  int iterations = 0;
  std::vector<double> objective_trace;  // l - h after each outer iteration
  std::vector<double> sum_rate_trace;   // true sum rate (bit/s), for reporting
  bool converged = false;
  double final_e = 0.0;
};

// Successive convex approximation: rebuild the surrogate at the current
// iterate, maximize it, repeat. The objective trace is non-decreasing.
std::pair<PowerAllocation, ScaReport> sca(const PowerAllocation& p0,
                                          const Topology& topo,
                                          const Association& assoc,
                                          const NetworkConfig& cfg,
                                          const ScaOptions& opt = {});

// Uniform split of each UAV's budget over its cluster.
PowerAllocation uniform_power(const Association& assoc,
                              const NetworkConfig& cfg);

}  // namespace uavsim

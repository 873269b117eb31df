#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uavsim/types.hpp"

namespace uavsim {

enum class Constraint {
  min_rate,        // per-link rate below the QoS floor
  association,     // GU not mapped to exactly one valid UAV
  power_budget,    // per-UAV sum power above the budget
  power_box,       // per-link power outside [0, p_max]
  min_separation,  // pairwise UAV distance below d_min
  max_speed,       // per-slot displacement above v_max * slot_duration
};

std::string to_string(Constraint c);

struct Violation {
  Constraint id;
  int slot;  // slot index (0-based); for max_speed, the slot moved into
  int i;     // UAV or GU index depending on the constraint
  int j;     // second index where applicable, else -1
};

struct ViolationReport {
  std::vector<Violation> items;

  bool empty() const { return items.empty(); }
  std::size_t count(Constraint c) const {
    std::size_t n = 0;
    for (const auto& v : items) n += (v.id == c) ? 1 : 0;
    return n;
  }
};

// True when all pairwise UAV distances are >= d_min.
bool separation_ok(const Topology& topo, const NetworkConfig& cfg);

// Evaluates the feasibility of a whole episode: one topology and power
// allocation per slot, a fixed association. An empty report means feasible.
ViolationReport check_constraints(const std::vector<Topology>& slots,
                                  const Association& assoc,
                                  const std::vector<PowerAllocation>& powers,
                                  const NetworkConfig& cfg);

}  // namespace uavsim

#include "uavsim/types.hpp"

namespace uavsim {

void NetworkConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError(std::string(name) + " must be positive");
  };
  positive(bandwidth_total, "bandwidth_total");
  positive(p_max, "p_max");
  positive(r_min, "r_min");
  positive(area_side, "area_side");
  positive(uav_altitude, "uav_altitude");
  positive(v_max, "v_max");
  positive(d_min, "d_min");
  positive(slot_duration, "slot_duration");
  if (carrier_absorption < 0.0 || !std::isfinite(carrier_absorption))
    throw ConfigError("carrier_absorption must be >= 0");
  if (!std::isfinite(ref_gain_db) || !std::isfinite(noise_psd_dbm_hz))
    throw ConfigError("gain/noise levels must be finite");
  if (d_min >= area_side)
    throw ConfigError("d_min must be smaller than area_side");
  if (n_slots < 1) throw ConfigError("n_slots must be >= 1");
  if (n_uavs < 1) throw ConfigError("n_uavs must be >= 1");
  if (n_gus < n_uavs) throw ConfigError("n_gus must be >= n_uavs");
}

std::string to_string(InterferenceMode mode) {
  return mode == InterferenceMode::literal ? "literal" : "physical";
}

std::string to_string(PowerPolicyKind kind) {
  switch (kind) {
    case PowerPolicyKind::sca: return "sca";
    case PowerPolicyKind::random: return "random";
    case PowerPolicyKind::uniform: return "uniform";
  }
  return "sca";
}

InterferenceMode interference_mode_from_string(const std::string& s) {
  if (s == "literal") return InterferenceMode::literal;
  if (s == "physical") return InterferenceMode::physical;
  throw ConfigError("unknown interference_mode: " + s);
}

PowerPolicyKind power_policy_from_string(const std::string& s) {
  if (s == "sca") return PowerPolicyKind::sca;
  if (s == "random") return PowerPolicyKind::random;
  if (s == "uniform") return PowerPolicyKind::uniform;
  throw ConfigError("unknown power_policy: " + s);
}

}  // namespace uavsim

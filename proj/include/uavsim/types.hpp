#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace uavsim {

// Configuration or input that cannot be interpreted.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File system / serialization failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline double sq_dist(const Vec2& a, const Vec2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double dist(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// How interference at a downlink is accumulated. `literal` sums the other
// transmitters' powers weighted by their own link gains; `physical` weights
// each of them by the gain toward the receiver under consideration.
enum class InterferenceMode { literal, physical };

enum class PowerPolicyKind { sca, random, uniform };

// Physical and protocol constants of the network.
struct NetworkConfig {
  double bandwidth_total = 1e11;      // Hz, shared by each UAV's cluster
  double carrier_absorption = 0.005;  // 1/m molecular absorption coefficient
  double ref_gain_db = -40.0;         // channel gain at 1 m, dB
  double noise_psd_dbm_hz = -174.0;   // noise power spectral density, dBm/Hz
  double p_max = 2.0;                 // W, per-UAV transmit power budget
  double r_min = 2e10;                // bit/s, per-user minimum rate
  double area_side = 200.0;           // m, square service area
  double uav_altitude = 20.0;         // m, fixed hover altitude
  double v_max = 5.0;                 // m/s
  double d_min = 10.0;                // m, minimum inter-UAV separation
  double slot_duration = 1.0;         // s, movement interval per slot
  int n_slots = 25;                   // slots per episode
  int n_uavs = 3;
  int n_gus = 36;
  InterferenceMode interference_mode = InterferenceMode::literal;

  double ref_gain_linear() const { return std::pow(10.0, ref_gain_db / 10.0); }

  // dBm/Hz -> W/Hz.
  double noise_psd_w_hz() const {
    return std::pow(10.0, (noise_psd_dbm_hz - 30.0) / 10.0);
  }

  void validate() const;
};

// UAV and GU placement at one time slot. UAV altitude is fixed; headings are
// kept in [-pi, pi).
struct Topology {
  std::vector<Vec3> uav_pos;
  std::vector<double> uav_heading;
  std::vector<Vec2> gu_pos;

  int n_uavs() const { return static_cast<int>(uav_pos.size()); }
  int n_gus() const { return static_cast<int>(gu_pos.size()); }
};

// GU -> UAV assignment with balanced cluster sizes.
struct Association {
  std::vector<int> assign;  // index: GU, value: UAV
  int n_uavs = 0;

  int n_gus() const { return static_cast<int>(assign.size()); }

  std::vector<int> cluster_sizes() const {
    std::vector<int> sizes(static_cast<std::size_t>(n_uavs), 0);
    for (int u : assign) sizes.at(static_cast<std::size_t>(u))++;
    return sizes;
  }

  std::vector<int> members(int k) const {
    std::vector<int> out;
    for (int m = 0; m < n_gus(); ++m)
      if (assign[static_cast<std::size_t>(m)] == k) out.push_back(m);
    return out;
  }
};

// Dense K x M grid of per-link scalars (transmit powers, gradients, gains).
struct LinkGrid {
  int n_uavs = 0;
  int n_gus = 0;
  std::vector<double> v;

  LinkGrid() = default;
  LinkGrid(int k, int m)
      : n_uavs(k),
        n_gus(m),
        v(static_cast<std::size_t>(k) * static_cast<std::size_t>(m), 0.0) {}

  double& at(int k, int m) {
    return v[static_cast<std::size_t>(k) * static_cast<std::size_t>(n_gus) +
             static_cast<std::size_t>(m)];
  }
  double at(int k, int m) const {
    return v[static_cast<std::size_t>(k) * static_cast<std::size_t>(n_gus) +
             static_cast<std::size_t>(m)];
  }
};

// Per-link transmit powers in W; nonzero only on associated links.
struct PowerAllocation : LinkGrid {
  PowerAllocation() = default;
  PowerAllocation(int k, int m) : LinkGrid(k, m) {}

  double uav_total(int k) const {
    double s = 0.0;
    for (int m = 0; m < n_gus; ++m) s += at(k, m);
    return s;
  }
};

std::string to_string(InterferenceMode mode);
std::string to_string(PowerPolicyKind kind);
InterferenceMode interference_mode_from_string(const std::string& s);
PowerPolicyKind power_policy_from_string(const std::string& s);

}  // namespace uavsim

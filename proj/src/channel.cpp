#include "uavsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace uavsim {

double link_distance(const Vec3& uav, const Vec2& gu) {
  const double dx = uav.x - gu.x;
  const double dy = uav.y - gu.y;
  return std::sqrt(dx * dx + dy * dy + uav.z * uav.z);
}

double channel_gain(double d, double a) {
  if (!(d > 0.0)) throw std::domain_error("channel_gain: distance must be > 0");
  if (a < 0.0) throw std::domain_error("channel_gain: absorption must be >= 0");
  return std::exp(-a * d) / (d * d);
}

double bandwidth_share(const Association& assoc, const NetworkConfig& cfg,
                       int k) {
  const auto sizes = assoc.cluster_sizes();
  const int n = sizes.at(static_cast<std::size_t>(k));
  if (n <= 0)
    throw std::invalid_argument("bandwidth_share: empty cluster " +
                                std::to_string(k));
  return cfg.bandwidth_total / static_cast<double>(n);
}

double interference(int k, int m, const Topology& topo,
                    const Association& assoc, const PowerAllocation& powers,
                    const NetworkConfig& cfg) {
  const int K = topo.n_uavs();
  const int M = topo.n_gus();
  if (k < 0 || k >= K || m < 0 || m >= M)
    throw std::out_of_range("interference: link index out of range");

  double psi = 0.0;
  if (cfg.interference_mode == InterferenceMode::literal) {
    // Every other transmitter's power weighted by its own link gain.
    for (int kp = 0; kp < K; ++kp) {
      if (kp == k) continue;
      for (int mp = 0; mp < M; ++mp) {
        if (mp == m) continue;
        const double p = powers.at(kp, mp);
        if (p == 0.0) continue;
        const double d = link_distance(topo.uav_pos[static_cast<std::size_t>(kp)],
                                       topo.gu_pos[static_cast<std::size_t>(mp)]);
        psi += p * channel_gain(d, cfg.carrier_absorption);
      }
    }
  } else {
    // Every other transmitter's power weighted by its gain toward this GU.
    for (int kp = 0; kp < K; ++kp) {
      if (kp == k) continue;
      double p_total = 0.0;
      for (int mp = 0; mp < M; ++mp) p_total += powers.at(kp, mp);
      if (p_total == 0.0) continue;
      const double d = link_distance(topo.uav_pos[static_cast<std::size_t>(kp)],
                                     topo.gu_pos[static_cast<std::size_t>(m)]);
      psi += p_total * channel_gain(d, cfg.carrier_absorption);
    }
  }
  (void)assoc;
  return psi;
}

double sinr(double p_km, double psi, double bw_share, double d,
            const NetworkConfig& cfg) {
  if (p_km < 0.0) throw std::domain_error("sinr: power must be >= 0");
  if (!(bw_share > 0.0)) throw std::domain_error("sinr: bandwidth must be > 0");
  const double noise = bw_share * d * d *
                       std::exp(cfg.carrier_absorption * d) *
                       cfg.noise_psd_w_hz();
  return p_km * cfg.ref_gain_linear() / (psi + noise);
}

double link_rate(double bw_share, double sinr_value) {
  if (sinr_value < 0.0) throw std::domain_error("link_rate: SINR must be >= 0");
  return bw_share * std::log2(1.0 + sinr_value);
}

double link_rate_at(int k, int m, const Topology& topo,
                    const Association& assoc, const PowerAllocation& powers,
                    const NetworkConfig& cfg) {
  const double bw = bandwidth_share(assoc, cfg, k);
  const double d = link_distance(topo.uav_pos[static_cast<std::size_t>(k)],
                                 topo.gu_pos[static_cast<std::size_t>(m)]);
  const double psi = interference(k, m, topo, assoc, powers, cfg);
  return link_rate(bw, sinr(powers.at(k, m), psi, bw, d, cfg));
}

double uav_slot_rate(int k, const Topology& topo, const Association& assoc,
                     const PowerAllocation& powers, const NetworkConfig& cfg) {
  double total = 0.0;
  for (int m : assoc.members(k))
    total += link_rate_at(k, m, topo, assoc, powers, cfg);
  return total;
}

double network_sum_rate(const Topology& topo, const Association& assoc,
                        const PowerAllocation& powers,
                        const NetworkConfig& cfg) {
  double total = 0.0;
  for (int k = 0; k < topo.n_uavs(); ++k)
    total += uav_slot_rate(k, topo, assoc, powers, cfg);
  return total;
}

}  // namespace uavsim

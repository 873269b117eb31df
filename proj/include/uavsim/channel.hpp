#pragma once

#include "uavsim/types.hpp"

namespace uavsim {

// Euclidean distance from a UAV to a ground user at height 0.
double link_distance(const Vec3& uav, const Vec2& gu);

// Spreading loss with molecular absorption: d^-2 * exp(-a d).
// Throws std::domain_error for d <= 0.
double channel_gain(double d, double a);

// Bandwidth of one link of UAV k: total bandwidth split evenly over the
// cluster the UAV serves.
double bandwidth_share(const Association& assoc, const NetworkConfig& cfg,
                       int k);

// Aggregate interference at link (k, m) in W, per the configured mode.
double interference(int k, int m, const Topology& topo,
                    const Association& assoc, const PowerAllocation& powers,
                    const NetworkConfig& cfg);

// SINR of a link carrying power p_km against interference psi, with the
// noise floor referred through the link's own path loss.
double sinr(double p_km, double psi, double bw_share, double d,
            const NetworkConfig& cfg);

// Shannon rate of one link, bit/s.
double link_rate(double bw_share, double sinr_value);

// Rate of link (k, m) composed from the pieces above.
double link_rate_at(int k, int m, const Topology& topo,
                    const Association& assoc, const PowerAllocation& powers,
                    const NetworkConfig& cfg);

// Sum rate over the cluster served by UAV k at the current slot, bit/s.
double uav_slot_rate(int k, const Topology& topo, const Association& assoc,
                     const PowerAllocation& powers, const NetworkConfig& cfg);

// Sum over all UAVs of uav_slot_rate.
double network_sum_rate(const Topology& topo, const Association& assoc,
                        const PowerAllocation& powers,
                        const NetworkConfig& cfg);

}  // namespace uavsim

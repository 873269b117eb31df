#pragma once

#include <vector>

#include "uavsim/types.hpp"

namespace uavsim {

// Pre-sized assignment slots: slot_owner[s] is the cluster that owns slot s.
// With M users and K clusters, (M mod K) clusters get ceil(M/K) slots and the
// rest get floor(M/K); the larger clusters take the lower indices.
struct SlotLayout {
  std::vector<int> slot_owner;

  std::vector<int> cluster_sizes(int k) const {
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int c : slot_owner) sizes.at(static_cast<std::size_t>(c))++;
    return sizes;
  }
};

// Throws std::invalid_argument when m < k or k < 1.
SlotLayout make_slot_layout(int m, int k);

// Arithmetic mean of each cluster's member positions.
// Throws std::invalid_argument on an empty cluster.
std::vector<Vec2> centroid_update(const std::vector<Vec2>& gu_pos,
                                  const Association& assoc);

struct BkmcResult {
  Association assoc;
  std::vector<Vec2> centroids;
  int iterations = 0;
  bool converged = false;
  // Optimal assignment cost per iteration (sum of squared distances to the
  // centroids the assignment was computed against). Non-increasing.
  std::vector<double> cost_trace;
};

// Balanced k-means: alternates a Hungarian solve over pre-sized cluster
// slots with a centroid update, until centroids move less than 1e-9 m or
// max_iters is reached.
BkmcResult bkmc(const std::vector<Vec2>& gu_pos,
                std::vector<Vec2> initial_centroids, int max_iters = 100);

}  // namespace uavsim

#include "uavsim/clustering.hpp"

#include <cmath>
#include <stdexcept>

#include "uavsim/assignment.hpp"

namespace uavsim {

namespace {
constexpr double kCentroidTol = 1e-9;  // m
}

SlotLayout make_slot_layout(int m, int k) {
  if (k < 1) throw std::invalid_argument("make_slot_layout: k must be >= 1");
  if (m < k) throw std::invalid_argument("make_slot_layout: m must be >= k");
  const int base = m / k;
  const int extra = m % k;  // this many clusters take one more slot
  SlotLayout layout;
  layout.slot_owner.reserve(static_cast<std::size_t>(m));
  for (int c = 0; c < k; ++c) {
    const int size = base + (c < extra ? 1 : 0);
    for (int s = 0; s < size; ++s) layout.slot_owner.push_back(c);
  }
  return layout;
}

std::vector<Vec2> centroid_update(const std::vector<Vec2>& gu_pos,
                                  const Association& assoc) {
  std::vector<Vec2> sums(static_cast<std::size_t>(assoc.n_uavs));
  std::vector<int> counts(static_cast<std::size_t>(assoc.n_uavs), 0);
  for (std::size_t m = 0; m < gu_pos.size(); ++m) {
    const auto k = static_cast<std::size_t>(assoc.assign[m]);
    sums[k].x += gu_pos[m].x;
    sums[k].y += gu_pos[m].y;
    counts[k]++;
  }
  std::vector<Vec2> centroids(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k) {
    if (counts[k] == 0)
      throw std::invalid_argument("centroid_update: empty cluster " +
                                  std::to_string(k));
    centroids[k] = {sums[k].x / counts[k], sums[k].y / counts[k]};
  }
  return centroids;
}

BkmcResult bkmc(const std::vector<Vec2>& gu_pos,
                std::vector<Vec2> initial_centroids, int max_iters) {
  const int m = static_cast<int>(gu_pos.size());
  const int k = static_cast<int>(initial_centroids.size());
  const SlotLayout layout = make_slot_layout(m, k);

  BkmcResult result;
  result.centroids = std::move(initial_centroids);
  result.assoc.n_uavs = k;

  std::vector<std::vector<double>> cost(
      static_cast<std::size_t>(m),
      std::vector<double>(static_cast<std::size_t>(m), 0.0));

  for (int it = 0; it < max_iters; ++it) {
    // Each GU competes for each pre-sized slot at the squared distance to
    // the slot's owning centroid.
    for (std::size_t g = 0; g < static_cast<std::size_t>(m); ++g)
      for (std::size_t s = 0; s < static_cast<std::size_t>(m); ++s)
        cost[g][s] = sq_dist(
            gu_pos[g],
            result.centroids[static_cast<std::size_t>(layout.slot_owner[s])]);

    const std::vector<int> gu_to_slot = hungarian(cost);
    result.cost_trace.push_back(assignment_cost(cost, gu_to_slot));

    result.assoc.assign.assign(static_cast<std::size_t>(m), -1);
    for (std::size_t g = 0; g < static_cast<std::size_t>(m); ++g)
      result.assoc.assign[g] =
          layout.slot_owner[static_cast<std::size_t>(gu_to_slot[g])];

    const std::vector<Vec2> next = centroid_update(gu_pos, result.assoc);
    double delta = 0.0;
    for (std::size_t c = 0; c < next.size(); ++c) {
      delta = std::max(delta, std::abs(next[c].x - result.centroids[c].x));
      delta = std::max(delta, std::abs(next[c].y - result.centroids[c].y));
    }
    result.centroids = next;
    result.iterations = it + 1;
    if (delta < kCentroidTol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace uavsim

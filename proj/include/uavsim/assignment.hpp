#pragma once

#include <vector>

namespace uavsim {

// Minimum-cost perfect matching on a square cost matrix, O(n^3).
// Returns the column assigned to each row. Ties resolve toward lower row
// indices, so equal-cost instances assign reproducibly.
// Throws std::invalid_argument on non-square or non-finite input.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost);

// Total cost of an assignment under a cost matrix.
double assignment_cost(const std::vector<std::vector<double>>& cost,
                       const std::vector<int>& row_to_col);

}  // namespace uavsim

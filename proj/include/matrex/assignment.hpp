#pragma once

#include <vector>

namespace matrex {

// Minimum-cost perfect assignment on a square cost matrix (shortest
// augmenting paths with potentials). Returns the optimal total cost and one
// optimal row -> column map. Costs must be non-negative.
struct AssignmentResult {
  long long cost = 0;
  std::vector<int> column_of;
};

AssignmentResult min_cost_assignment(const std::vector<std::vector<int>>& cost);

}  // namespace matrex

#include "matrex/assignment.hpp"

#include <limits>

#include "matrex/error.hpp"

namespace matrex {

AssignmentResult min_cost_assignment(const std::vector<std::vector<int>>& cost) {
  const int n = int(cost.size());
  for (const auto& row : cost)
    if (int(row.size()) != n) throw InvalidParameter("cost matrix is not square");
  if (n == 0) return {};

  const long long inf = std::numeric_limits<long long>::max() / 4;
  // 1-based with a dummy column 0, the usual formulation.
  std::vector<long long> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<long long> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = match[j0], j1 = -1;
      long long delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        long long cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }

  AssignmentResult res;
  res.column_of.assign(n, -1);
  for (int j = 1; j <= n; ++j)
    if (match[j] > 0) res.column_of[match[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) res.cost += cost[i][res.column_of[i]];
  return res;
}

}  // namespace matrex

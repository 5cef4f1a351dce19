// Copyright (c) 2026 SASR Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sasr/assignment.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sasr {

AssignmentResult SolveAssignment(const Matrix& cost) {
  const int n = cost.rows();
  if (cost.cols() != n) {
    throw std::invalid_argument("assignment: cost matrix must be square");
  }
  AssignmentResult result;
  if (n == 0) return result;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(cost(i, j))) {
        throw std::invalid_argument("assignment: non-finite cost entry");
      }
    }
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based with a dummy row/column 0; match[j] is the row matched to
  // column j.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      double delta = kInf;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
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
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  result.row_to_col.assign(n, -1);
  for (int j = 1; j <= n; ++j) result.row_to_col[match[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) result.cost += cost(i, result.row_to_col[i]);
  return result;
}

}  // namespace sasr

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

#ifndef SASR_ASSIGNMENT_H_
#define SASR_ASSIGNMENT_H_

// Minimum-cost perfect matching on a square cost matrix (Hungarian
// algorithm with row/column potentials, O(n^3)). Callers with
// rectangular problems pad the matrix to square first.

#include <vector>

#include "sasr/matrix.h"

namespace sasr {

struct AssignmentResult {
  // row_to_col[i] is the column matched to row i.
  std::vector<int> row_to_col;
  double cost = 0.0;
};

AssignmentResult SolveAssignment(const Matrix& cost);

}  // namespace sasr

#endif  // SASR_ASSIGNMENT_H_

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

#ifndef SASR_EIGEN_H_
#define SASR_EIGEN_H_

// Symmetric eigendecomposition by cyclic Jacobi rotations. The matrices
// here are small dense Laplacians (at most a few thousand rows), where
// Jacobi is simple, dependency-free, and deterministic.

#include "sasr/matrix.h"

#include <vector>

namespace sasr {

struct EigenResult {
  // Ascending eigenvalues; vectors holds the matching eigenvectors as
  // columns (empty when values_only was requested).
  std::vector<double> values;
  Matrix vectors;
};

// Decomposes a symmetric matrix (checked within 1e-9). Converges when
// the off-diagonal Frobenius norm drops below 1e-10, with a cap of 100
// sweeps; non-convergence throws std::runtime_error reporting the sweep
// count and residual. values_only skips eigenvector accumulation.
EigenResult JacobiEigen(const Matrix& a, bool values_only = false);

}  // namespace sasr

#endif  // SASR_EIGEN_H_

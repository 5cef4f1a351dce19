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

#include "sasr/eigen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sasr {

namespace {

constexpr double kOffDiagTol = 1e-10;
constexpr int kMaxSweeps = 100;

double OffDiagNorm(const Matrix& a) {
  const int n = a.rows();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) sum += a(i, j) * a(i, j);
  }
  return std::sqrt(2.0 * sum);
}

void CheckSymmetric(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("eigen: matrix not square (" +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ")");
  }
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = i + 1; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > 1e-9) {
        throw std::invalid_argument("eigen: matrix not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) +
                                    ")");
      }
    }
  }
}

// One Givens rotation zeroing a(p,q), with the usual stable choice of
// the smaller rotation angle.
void Rotate(Matrix& a, Matrix& v, int p, int q, bool values_only) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e154) {
    t = 1.0 / (2.0 * theta);
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);
  const int n = a.rows();

  const double app = a(p, p);
  const double aqq = a(q, q);
  a(p, p) = app - t * apq;
  a(q, q) = aqq + t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == p || i == q) continue;
    const double aip = a(i, p);
    const double aiq = a(i, q);
    a(i, p) = aip - s * (aiq + tau * aip);
    a(p, i) = a(i, p);
    a(i, q) = aiq + s * (aip - tau * aiq);
    a(q, i) = a(i, q);
  }
  if (values_only) return;
  for (int i = 0; i < n; ++i) {
    const double vip = v(i, p);
    const double viq = v(i, q);
    v(i, p) = vip - s * (viq + tau * vip);
    v(i, q) = viq + s * (vip - tau * viq);
  }
}

}  // namespace

EigenResult JacobiEigen(const Matrix& input, bool values_only) {
  CheckSymmetric(input);
  const int n = input.rows();
  EigenResult result;
  if (n == 0) return result;

  Matrix a = input;
  Matrix v;
  if (!values_only) {
    v = Matrix(n, n, 0.0);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;
  }

  int sweep = 0;
  double off = OffDiagNorm(a);
  while (off >= kOffDiagTol) {
    if (sweep == kMaxSweeps) {
      std::ostringstream msg;
      msg << "eigen: no convergence after " << kMaxSweeps
          << " sweeps (off-diagonal norm " << off << ")";
      throw std::runtime_error(msg.str());
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) Rotate(a, v, p, q, values_only);
    }
    ++sweep;
    off = OffDiagNorm(a);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a(x, x) < a(y, y); });

  result.values.resize(n);
  for (int i = 0; i < n; ++i) result.values[i] = a(order[i], order[i]);
  if (!values_only) {
    result.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) result.vectors(i, j) = v(i, order[j]);
    }
  }
  return result;
}

}  // namespace sasr

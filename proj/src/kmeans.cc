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

#include "sasr/kmeans.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sasr/parallel.h"
#include "sasr/rng.h"

namespace sasr {

namespace {

double SquaredDistance(const Matrix& a, int row_a, const Matrix& b, int row_b) {
  double sum = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    const double diff = a(row_a, j) - b(row_b, j);
    sum += diff * diff;
  }
  return sum;
}

void AssignRow(const Matrix& points, const Matrix& centroids, int i,
               std::vector<int>& labels, std::vector<double>& dists) {
  int best = 0;
  double best_dist = SquaredDistance(points, i, centroids, 0);
  for (int c = 1; c < centroids.rows(); ++c) {
    const double d = SquaredDistance(points, i, centroids, c);
    if (d < best_dist) {
      best_dist = d;
      best = c;
    }
  }
  labels[i] = best;
  dists[i] = best_dist;
}

// Seeded k-means++: the first center is a uniform draw, each later one
// is drawn proportional to squared distance from the chosen set. A
// degenerate all-zero weight vector falls back to the lowest unused
// point index.
Matrix PlusPlusInit(const Matrix& points, int k, Rng& rng) {
  const int n = points.rows();
  const int d = points.cols();
  Matrix centers(k, d);
  std::vector<bool> used(n, false);
  std::vector<double> weight(n, 0.0);

  int first = static_cast<int>(rng.Bounded(static_cast<uint64_t>(n)));
  used[first] = true;
  for (int j = 0; j < d; ++j) centers(0, j) = points(first, j);
  for (int i = 0; i < n; ++i) weight[i] = SquaredDistance(points, i, centers, 0);

  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += weight[i];
    int pick = -1;
    if (total > 0.0) {
      const double u = rng.Uniform() * total;
      double cum = 0.0;
      for (int i = 0; i < n; ++i) {
        cum += weight[i];
        if (cum > u) {
          pick = i;
          break;
        }
      }
      if (pick < 0) pick = n - 1;
    }
    if (pick < 0 || used[pick]) {
      for (int i = 0; i < n; ++i) {
        if (!used[i]) {
          pick = i;
          break;
        }
      }
    }
    used[pick] = true;
    for (int j = 0; j < d; ++j) centers(c, j) = points(pick, j);
    for (int i = 0; i < n; ++i) {
      const double dist = SquaredDistance(points, i, centers, c);
      if (dist < weight[i]) weight[i] = dist;
    }
  }
  return centers;
}

// Moves the farthest point of some multi-member cluster into each empty
// cluster, lowest empty cluster first, ties to the lowest point index.
void RepairEmptyClusters(const Matrix& points, std::vector<int>& labels,
                         std::vector<double>& dists, int k) {
  const int n = points.rows();
  std::vector<int> counts(k, 0);
  for (int i = 0; i < n; ++i) ++counts[labels[i]];
  for (int c = 0; c < k; ++c) {
    if (counts[c] > 0) continue;
    int pick = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      if (counts[labels[i]] < 2) continue;
      if (dists[i] > best) {
        best = dists[i];
        pick = i;
      }
    }
    if (pick < 0) {
      throw std::invalid_argument("kmeans: cannot repair empty cluster " +
                                  std::to_string(c) + " (k exceeds distinct points)");
    }
    --counts[labels[pick]];
    labels[pick] = c;
    counts[c] = 1;
    dists[pick] = 0.0;
  }
}

}  // namespace

void AssignNearestSerial(const Matrix& points, const Matrix& centroids,
                         std::vector<int>& labels, std::vector<double>& dists) {
  const int n = points.rows();
  labels.resize(n);
  dists.resize(n);
  for (int i = 0; i < n; ++i) AssignRow(points, centroids, i, labels, dists);
}

void AssignNearest(const Matrix& points, const Matrix& centroids,
                   std::vector<int>& labels, std::vector<double>& dists) {
  const int n = points.rows();
  labels.resize(n);
  dists.resize(n);
  ParallelFor(n, [&](int i) { AssignRow(points, centroids, i, labels, dists); });
}

KmeansResult Kmeans(const Matrix& points, int k, const KmeansConfig& cfg) {
  const int n = points.rows();
  const int d = points.cols();
  if (n == 0 || d == 0) throw std::invalid_argument("kmeans: empty input");
  if (k < 1 || k > n) {
    throw std::invalid_argument("kmeans: k=" + std::to_string(k) +
                                " out of range [1, " + std::to_string(n) + "]");
  }

  Rng rng(cfg.seed);
  KmeansResult result;
  result.centroids = PlusPlusInit(points, k, rng);
  std::vector<double> dists;

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    AssignNearest(points, result.centroids, result.labels, dists);
    RepairEmptyClusters(points, result.labels, dists, k);
    result.iterations = iter + 1;

    Matrix sums(k, d);
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      const int c = result.labels[i];
      ++counts[c];
      for (int j = 0; j < d; ++j) sums(c, j) += points(i, j);
    }
    double max_shift = 0.0;
    for (int c = 0; c < k; ++c) {
      for (int j = 0; j < d; ++j) {
        const double mean = sums(c, j) / counts[c];
        max_shift = std::max(max_shift, std::abs(mean - result.centroids(c, j)));
        result.centroids(c, j) = mean;
      }
    }
    if (max_shift < cfg.tolerance) break;
  }

  AssignNearest(points, result.centroids, result.labels, dists);
  RepairEmptyClusters(points, result.labels, dists, k);
  result.inertia = 0.0;
  for (int i = 0; i < n; ++i) result.inertia += dists[i];
  return result;
}

}  // namespace sasr

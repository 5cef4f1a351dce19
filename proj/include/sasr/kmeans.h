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

#ifndef SASR_KMEANS_H_
#define SASR_KMEANS_H_

// Deterministic k-means. Seeded k-means++ initialization, nearest-
// centroid ties broken by lowest centroid index, empty clusters repaired
// by moving the farthest point out of a multi-member cluster. Given one
// seed the result is identical across runs and thread counts.

#include <cstdint>
#include <vector>

#include "sasr/matrix.h"

namespace sasr {

struct KmeansConfig {
  uint64_t seed = 17;
  int max_iterations = 100;
  double tolerance = 1e-8;
};

struct KmeansResult {
  std::vector<int> labels;
  Matrix centroids;
  double inertia = 0.0;
  int iterations = 0;
};

// points: n x d, one row per point. Requires 1 <= k <= n.
KmeansResult Kmeans(const Matrix& points, int k, const KmeansConfig& cfg = {});

// The assignment step as a standalone kernel: labels[i] becomes the
// index of the centroid nearest to row i (squared Euclidean distance,
// ties to the lowest index) and dists[i] the distance to it. The
// parallel version splits rows across threads; each row is written by
// one iteration, so the two agree bitwise.
void AssignNearest(const Matrix& points, const Matrix& centroids,
                   std::vector<int>& labels, std::vector<double>& dists);
void AssignNearestSerial(const Matrix& points, const Matrix& centroids,
                         std::vector<int>& labels, std::vector<double>& dists);

}  // namespace sasr

#endif  // SASR_KMEANS_H_

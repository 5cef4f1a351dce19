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

#ifndef SASR_CLUSTERING_H_
#define SASR_CLUSTERING_H_

// Speaker clustering: cosine affinities, eigengap-based speaker
// counting, spectral clustering, centroid extraction, and leakage
// filtering of candidate clusters against reference centroids.

#include <cstdint>
#include <vector>

#include "sasr/matrix.h"
#include "sasr/types.h"

namespace sasr {

// Pairwise cosine similarities: symmetric within 1e-9, unit diagonal,
// entries in [-1, 1].
struct AffinityMatrix {
  Matrix values;

  int n() const { return values.rows(); }

  // Throws std::invalid_argument on any violated invariant.
  void Validate() const;
};

// values[i][j] = cosine of embeddings i and j. The parallel version
// computes the upper triangle row-wise across threads and mirrors it;
// each entry is written from one iteration, so it matches the serial
// reference bitwise.
AffinityMatrix CosineAffinity(const std::vector<Embedding>& embeddings);
AffinityMatrix CosineAffinitySerial(const std::vector<Embedding>& embeddings);

struct NmeResult {
  int k = 1;
  // Eigengaps of the chosen binarization, gap i (1-based) between
  // eigenvalues i and i+1 of the normalized Laplacian.
  std::vector<double> eigengaps;
  // Chosen row-binarization width and its criterion value, for the
  // cluster --explain diagnostics.
  int p = 0;
  double criterion = 0.0;
};

// Estimates the speaker count: for each p on a fixed grid
// (p/n in {0.02, 0.04, ..., 0.5}) every affinity row is binarized to
// its top-p entries (ties with the p-th largest kept, so equal
// affinities are treated alike), the result symmetrized by averaging,
// and the eigengaps of the symmetric normalized Laplacian examined
// within [1, max_speakers]. The component count of the binarized graph
// never grows with p; sparse widths can shatter a cluster into clean
// subgraphs and dense ones can fuse distinct clusters, so k is the
// first count that persists while the graph genuinely widens. The
// reported width minimizes (p/n) / (gap / top eigenvalue) within that
// stretch, preferring widths whose largest gap sits exactly at k; when
// no count persists the ratio alone decides. n < 2 returns k = 1.
// max_speakers is capped at n - 1 since only that many gaps exist.
NmeResult NmeCount(const AffinityMatrix& aff, int max_speakers);

// k-means (seeded, deterministic) on the row-normalized matrix of the k
// eigenvectors with smallest eigenvalues of the normalized Laplacian.
// Negative affinity entries are clamped to zero when forming the
// Laplacian so degrees stay positive. Requires 1 <= k <= n.
std::vector<int> SpectralCluster(const AffinityMatrix& aff, int k,
                                 uint64_t seed = 17);

// Per-cluster arithmetic mean re-normalized to unit norm. Labels must
// cover [0, max label] with no empty cluster.
std::vector<Embedding> Centroids(const std::vector<Embedding>& embeddings,
                                 const std::vector<int>& labels);

// Indices (ascending) of candidates whose cosine distance to the
// nearest reference is at most threshold.
std::vector<int> LeakageFilter(const std::vector<Embedding>& candidates,
                               const std::vector<Embedding>& references,
                               double threshold = 0.05);

struct ClusterConfig {
  int max_speakers = 8;
  uint64_t seed = 17;
};

struct ClusterResult {
  std::vector<int> labels;
  int k = 1;
  std::vector<Embedding> centroids;
  std::vector<double> eigengaps;
};

// Affinity construction, speaker counting, spectral clustering, and
// centroid extraction in one call.
ClusterResult Cluster(const std::vector<Embedding>& embeddings,
                      const ClusterConfig& cfg = {});

}  // namespace sasr

#endif  // SASR_CLUSTERING_H_

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

#include "sasr/clustering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "sasr/eigen.h"
#include "sasr/kmeans.h"
#include "sasr/parallel.h"

namespace sasr {

namespace {

void CheckEmbeddings(const std::vector<Embedding>& embeddings, const char* where) {
  if (embeddings.empty()) {
    throw std::invalid_argument(std::string(where) + ": no embeddings");
  }
  const int dim = embeddings.front().dim();
  for (size_t i = 1; i < embeddings.size(); ++i) {
    if (embeddings[i].dim() != dim) {
      throw std::invalid_argument(std::string(where) + ": dimension mismatch at index " +
                                  std::to_string(i) + " (" +
                                  std::to_string(embeddings[i].dim()) + " vs " +
                                  std::to_string(dim) + ")");
    }
  }
}

void FillAffinityRow(const std::vector<Embedding>& embeddings, int i, Matrix& m) {
  m(i, i) = 1.0;
  for (int j = i + 1; j < m.cols(); ++j) {
    const double c = embeddings[i].Dot(embeddings[j]);
    m(i, j) = c;
    m(j, i) = c;
  }
}

// Symmetric normalized Laplacian I - D^{-1/2} S D^{-1/2} of a
// nonnegative symmetric matrix with positive row sums.
Matrix NormalizedLaplacian(const Matrix& s) {
  const int n = s.rows();
  std::vector<double> inv_sqrt_degree(n);
  for (int i = 0; i < n; ++i) {
    double degree = 0.0;
    for (int j = 0; j < n; ++j) degree += s(i, j);
    if (degree <= 0.0) {
      throw std::invalid_argument("laplacian: nonpositive degree at row " +
                                  std::to_string(i));
    }
    inv_sqrt_degree[i] = 1.0 / std::sqrt(degree);
  }
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      l(i, j) = -inv_sqrt_degree[i] * s(i, j) * inv_sqrt_degree[j];
    }
    l(i, i) += 1.0;
  }
  return l;
}

// Keeps the p largest entries of each row, extended to every entry
// tied with the p-th largest so equal affinities are treated alike
// (indistinguishable points would otherwise get an arbitrary,
// index-dependent graph), then symmetrizes by averaging.
Matrix BinarizeRows(const Matrix& a, int p) {
  const int n = a.rows();
  Matrix b(n, n);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return a(i, x) > a(i, y);
    });
    const double cutoff = a(i, order[static_cast<size_t>(p) - 1]);
    for (int r = 0; r < n; ++r) {
      if (r >= p && a(i, order[static_cast<size_t>(r)]) < cutoff) break;
      b(i, order[static_cast<size_t>(r)]) = 1.0;
    }
  }
  Matrix s(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s(i, j) = 0.5 * (b(i, j) + b(j, i));
  }
  return s;
}

}  // namespace

void AffinityMatrix::Validate() const {
  if (values.rows() != values.cols()) {
    throw std::invalid_argument("affinity: not square");
  }
  for (int i = 0; i < values.rows(); ++i) {
    if (std::abs(values(i, i) - 1.0) > 1e-9) {
      throw std::invalid_argument("affinity: diagonal entry " + std::to_string(i) +
                                  " is not 1");
    }
    for (int j = 0; j < values.cols(); ++j) {
      const double v = values(i, j);
      if (v < -1.0 - 1e-9 || v > 1.0 + 1e-9) {
        throw std::invalid_argument("affinity: entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") outside [-1, 1]");
      }
      if (std::abs(v - values(j, i)) > 1e-9) {
        throw std::invalid_argument("affinity: asymmetric at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      }
    }
  }
}

AffinityMatrix CosineAffinitySerial(const std::vector<Embedding>& embeddings) {
  CheckEmbeddings(embeddings, "affinity");
  const int n = static_cast<int>(embeddings.size());
  AffinityMatrix aff;
  aff.values = Matrix(n, n);
  for (int i = 0; i < n; ++i) FillAffinityRow(embeddings, i, aff.values);
  return aff;
}

AffinityMatrix CosineAffinity(const std::vector<Embedding>& embeddings) {
  CheckEmbeddings(embeddings, "affinity");
  const int n = static_cast<int>(embeddings.size());
  AffinityMatrix aff;
  aff.values = Matrix(n, n);
  ParallelFor(n, [&](int i) { FillAffinityRow(embeddings, i, aff.values); });
  return aff;
}

NmeResult NmeCount(const AffinityMatrix& aff, int max_speakers) {
  aff.Validate();
  if (max_speakers < 1) {
    throw std::invalid_argument("nme: max_speakers must be at least 1");
  }
  const int n = aff.n();
  NmeResult result;
  if (n < 2) return result;

  const int gap_limit = std::min(max_speakers, n - 1);
  std::set<int> widths;
  for (int step = 1; step <= 25; ++step) {
    const double ratio = 0.02 * step;
    widths.insert(std::clamp(static_cast<int>(std::lround(ratio * n)), 1, n));
  }

  struct Width {
    int p = 0;
    int components = 0;
    int arg = 1;
    bool new_graph = true;
    double gap_norm = 0.0;
    std::vector<double> gaps;
  };
  std::vector<Width> scored;  // ascending p
  std::vector<double> prev_graph;
  for (int p : widths) {
    const Matrix graph = BinarizeRows(aff.values, p);
    const Matrix laplacian = NormalizedLaplacian(graph);
    const auto values = JacobiEigen(laplacian, /*values_only=*/true).values;
    std::vector<double> gaps(n - 1);
    for (int i = 0; i + 1 < n; ++i) gaps[i] = values[i + 1] - values[i];

    int components = 0;
    for (double value : values) {
      if (value >= 1e-9) break;
      ++components;
    }
    int arg = 1;
    double largest = gaps[0];
    for (int i = 2; i <= gap_limit; ++i) {
      if (gaps[i - 1] > largest) {
        largest = gaps[i - 1];
        arg = i;
      }
    }
    if (largest <= 1e-12) continue;
    const double gap_norm = largest / std::max(values[n - 1], 1e-12);
    const bool new_graph = prev_graph.empty() || graph.data() != prev_graph;
    prev_graph = graph.data();
    scored.push_back({p, components, arg, new_graph, gap_norm, std::move(gaps)});
  }
  if (scored.empty()) return result;  // degenerate input, one cluster

  // Sparse widths can shatter a cluster into internally clean subgraphs
  // and dense widths can fuse distinct clusters, and both extremes can
  // look spectrally clean, so the count is read from the component
  // structure instead. It never grows with p; shattered counts decay
  // within a width or two while the true count persists, and fused
  // counts appear only after the true count has held. k is therefore
  // the first count that survives a genuine widening of the graph
  // (ties, e.g. from duplicate embeddings, can make consecutive widths
  // yield the same graph, which confirms nothing).
  int k = 0;
  size_t run_first = 0;
  size_t run_last = 0;
  for (size_t i = 0; i < scored.size() && k == 0;) {
    size_t j = i + 1;
    bool widened = false;
    while (j < scored.size() && scored[j].components == scored[i].components) {
      widened = widened || scored[j].new_graph;
      ++j;
    }
    if (widened) {
      k = scored[i].components;
      run_first = i;
      run_last = j - 1;
    }
    i = j;
  }
  if (k == 0) {
    // Nothing persisted (tiny or degenerate inputs): fall back to the
    // ratio over widths whose largest gap sits at the component count,
    // then over every width.
    for (int pass = 0; pass < 2 && result.p == 0; ++pass) {
      double best_criterion = std::numeric_limits<double>::infinity();
      for (const Width& w : scored) {
        if (pass == 0 && w.components != w.arg) continue;
        const double criterion = (static_cast<double>(w.p) / n) / w.gap_norm;
        if (criterion < best_criterion) {
          best_criterion = criterion;
          result.k = w.arg;
          result.eigengaps = w.gaps;
          result.p = w.p;
          result.criterion = criterion;
        }
      }
    }
    return result;
  }
  // The reported width is the ratio minimizer within the chosen run,
  // preferring widths whose largest gap sits exactly at k.
  for (int pass = 0; pass < 2 && result.p == 0; ++pass) {
    double best_criterion = std::numeric_limits<double>::infinity();
    for (size_t i = run_first; i <= run_last; ++i) {
      const Width& w = scored[i];
      if (pass == 0 && w.arg != k) continue;
      const double criterion = (static_cast<double>(w.p) / n) / w.gap_norm;
      if (criterion < best_criterion) {
        best_criterion = criterion;
        result.k = k;
        result.eigengaps = w.gaps;
        result.p = w.p;
        result.criterion = criterion;
      }
    }
  }
  return result;
}

std::vector<int> SpectralCluster(const AffinityMatrix& aff, int k, uint64_t seed) {
  aff.Validate();
  const int n = aff.n();
  if (k < 1 || k > n) {
    throw std::invalid_argument("spectral: k=" + std::to_string(k) +
                                " out of range [1, " + std::to_string(n) + "]");
  }
  Matrix clamped(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) clamped(i, j) = std::max(aff.values(i, j), 0.0);
  }
  const EigenResult eig = JacobiEigen(NormalizedLaplacian(clamped));

  Matrix rows(n, k);
  for (int i = 0; i < n; ++i) {
    double norm = 0.0;
    for (int j = 0; j < k; ++j) norm += eig.vectors(i, j) * eig.vectors(i, j);
    norm = std::sqrt(norm);
    const double scale = norm < 1e-12 ? 1.0 : 1.0 / norm;
    for (int j = 0; j < k; ++j) rows(i, j) = eig.vectors(i, j) * scale;
  }
  KmeansConfig cfg;
  cfg.seed = seed;
  return Kmeans(rows, k, cfg).labels;
}

std::vector<Embedding> Centroids(const std::vector<Embedding>& embeddings,
                                 const std::vector<int>& labels) {
  CheckEmbeddings(embeddings, "centroids");
  if (labels.size() != embeddings.size()) {
    throw std::invalid_argument("centroids: labels and embeddings differ in length");
  }
  int k = 0;
  for (int label : labels) {
    if (label < 0) throw std::invalid_argument("centroids: negative label");
    k = std::max(k, label + 1);
  }
  const int dim = embeddings.front().dim();
  std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
  std::vector<int> counts(k, 0);
  for (size_t i = 0; i < embeddings.size(); ++i) {
    ++counts[labels[i]];
    const auto& v = embeddings[i].values();
    for (int j = 0; j < dim; ++j) sums[labels[i]][j] += v[j];
  }
  std::vector<Embedding> out;
  out.reserve(k);
  for (int c = 0; c < k; ++c) {
    if (counts[c] == 0) {
      throw std::invalid_argument("centroids: empty cluster " + std::to_string(c));
    }
    for (double& v : sums[c]) v /= counts[c];
    try {
      out.emplace_back(std::move(sums[c]));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("centroids: cluster " + std::to_string(c) +
                                  " mean is zero (cannot normalize)");
    }
  }
  return out;
}

std::vector<int> LeakageFilter(const std::vector<Embedding>& candidates,
                               const std::vector<Embedding>& references,
                               double threshold) {
  CheckEmbeddings(candidates, "leakage");
  CheckEmbeddings(references, "leakage references");
  if (candidates.front().dim() != references.front().dim()) {
    throw std::invalid_argument("leakage: candidate and reference dimensions differ");
  }
  std::vector<int> kept;
  for (size_t i = 0; i < candidates.size(); ++i) {
    double min_distance = std::numeric_limits<double>::infinity();
    for (const Embedding& ref : references) {
      min_distance = std::min(min_distance, 1.0 - candidates[i].Dot(ref));
    }
    if (min_distance <= threshold) kept.push_back(static_cast<int>(i));
  }
  return kept;
}

ClusterResult Cluster(const std::vector<Embedding>& embeddings,
                      const ClusterConfig& cfg) {
  const AffinityMatrix aff = CosineAffinity(embeddings);
  const NmeResult nme = NmeCount(aff, cfg.max_speakers);
  ClusterResult result;
  result.k = nme.k;
  result.eigengaps = nme.eigengaps;
  result.labels = SpectralCluster(aff, nme.k, cfg.seed);
  result.centroids = Centroids(embeddings, result.labels);
  return result;
}

}  // namespace sasr

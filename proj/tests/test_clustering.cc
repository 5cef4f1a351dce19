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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "sasr/clustering.h"
#include "sasr/rng.h"

using namespace sasr;

namespace {

// Unit vector along a coordinate axis.
Embedding Axis(int dim, int axis) {
  std::vector<double> v(dim, 0.0);
  v[axis] = 1.0;
  return Embedding(v);
}

// `blocks` groups of `per_block` embeddings, each group scattered
// around its own coordinate axis. noise = 0 gives identical vectors
// within a block and exactly orthogonal vectors across blocks.
std::vector<Embedding> BlockEmbeddings(int blocks, int per_block, int dim,
                                       double noise, uint64_t seed) {
  Rng rng(seed);
  std::vector<Embedding> out;
  for (int b = 0; b < blocks; ++b) {
    for (int i = 0; i < per_block; ++i) {
      std::vector<double> v(dim, 0.0);
      v[b] = 1.0;
      for (int j = 0; j < dim; ++j) v[j] += noise * rng.Gaussian();
      out.emplace_back(v);
    }
  }
  return out;
}

// True when the two labelings induce the same partition of indices.
bool SamePartition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> fwd, bwd;
  for (size_t i = 0; i < a.size(); ++i) {
    const auto f = fwd.emplace(a[i], b[i]);
    if (!f.second && f.first->second != b[i]) return false;
    const auto g = bwd.emplace(b[i], a[i]);
    if (!g.second && g.first->second != a[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cosine affinity has pinned pairwise values") {
  const std::vector<Embedding> e = {Axis(2, 0), Axis(2, 1),
                                    Embedding({1.0, 1.0})};
  const AffinityMatrix aff = CosineAffinity(e);
  aff.Validate();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(aff.n() == 3);
  CHECK(aff.values(0, 0) == doctest::Approx(1.0));
  CHECK(aff.values(0, 1) == doctest::Approx(0.0));
  CHECK(aff.values(0, 2) == doctest::Approx(inv_sqrt2));
  CHECK(aff.values(1, 2) == doctest::Approx(inv_sqrt2));
  CHECK(aff.values(2, 0) == aff.values(0, 2));
}

TEST_CASE("parallel affinity matches the serial reference bitwise") {
  Rng rng(41);
  std::vector<Embedding> e;
  for (int i = 0; i < 37; ++i) e.emplace_back(RandomUnitVector(&rng, 16));
  CHECK(CosineAffinity(e).values == CosineAffinitySerial(e).values);
}

TEST_CASE("affinity construction rejects bad embedding lists") {
  CHECK_THROWS_WITH_AS(CosineAffinity({}), doctest::Contains("no embeddings"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(CosineAffinity({Axis(2, 0), Axis(3, 1)}),
                       doctest::Contains("dimension mismatch"),
                       std::invalid_argument);
}

TEST_CASE("affinity validation flags each invariant violation") {
  AffinityMatrix aff;

  SUBCASE("not square") {
    aff.values = Matrix(2, 3);
    CHECK_THROWS_WITH_AS(aff.Validate(), doctest::Contains("not square"),
                         std::invalid_argument);
  }
  SUBCASE("diagonal entry not 1") {
    aff.values = Matrix(2, 2);
    aff.values(0, 0) = 0.5;
    aff.values(1, 1) = 1.0;
    CHECK_THROWS_WITH_AS(aff.Validate(), doctest::Contains("diagonal"),
                         std::invalid_argument);
  }
  SUBCASE("entry outside [-1, 1]") {
    aff.values = Matrix(2, 2);
    aff.values(0, 0) = 1.0;
    aff.values(1, 1) = 1.0;
    aff.values(0, 1) = 1.5;
    aff.values(1, 0) = 1.5;
    CHECK_THROWS_WITH_AS(aff.Validate(), doctest::Contains("outside"),
                         std::invalid_argument);
  }
  SUBCASE("asymmetric") {
    aff.values = Matrix(2, 2);
    aff.values(0, 0) = 1.0;
    aff.values(1, 1) = 1.0;
    aff.values(0, 1) = 0.2;
    aff.values(1, 0) = 0.3;
    CHECK_THROWS_WITH_AS(aff.Validate(), doctest::Contains("asymmetric"),
                         std::invalid_argument);
  }
}

TEST_CASE("speaker count for two exact blocks has a closed-form optimum") {
  // Two groups of three identical vectors, orthogonal across groups.
  // Every width keeps each full block (all within-block affinities tie
  // at 1), giving two self-looped cliques whose pooled spectrum is
  // {0, 0, 1, 1, 1, 1}: the position-2 gap is 1, the top eigenvalue is
  // 1, and width 1 minimizes (p/n) / (gap/top) at (1/6)/1.
  const auto e = BlockEmbeddings(2, 3, 4, 0.0, 1);
  const NmeResult nme = NmeCount(CosineAffinity(e), 4);
  CHECK(nme.k == 2);
  CHECK(nme.p == 1);
  CHECK(nme.criterion == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  REQUIRE(nme.eigengaps.size() == 5);
  CHECK(nme.eigengaps[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(nme.eigengaps[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("speaker count recovers three and four exact blocks") {
  const auto three = BlockEmbeddings(3, 3, 4, 0.0, 2);
  CHECK(NmeCount(CosineAffinity(three), 8).k == 3);

  const auto four = BlockEmbeddings(4, 3, 6, 0.0, 3);
  CHECK(NmeCount(CosineAffinity(four), 8).k == 4);
}

TEST_CASE("speaker count respects the max_speakers cap") {
  const auto four = BlockEmbeddings(4, 3, 6, 0.0, 3);
  const NmeResult capped = NmeCount(CosineAffinity(four), 2);
  CHECK(capped.k >= 1);
  CHECK(capped.k <= 2);
}

TEST_CASE("identical embeddings count as one speaker") {
  const auto e = BlockEmbeddings(1, 5, 4, 0.0, 4);
  const NmeResult nme = NmeCount(CosineAffinity(e), 4);
  CHECK(nme.k == 1);
}

TEST_CASE("speaker count handles tiny inputs") {
  CHECK(NmeCount(CosineAffinity({Axis(3, 0)}), 4).k == 1);
  CHECK(NmeCount(CosineAffinity(BlockEmbeddings(1, 2, 3, 0.0, 5)), 4).k == 1);
  CHECK_THROWS_WITH_AS(NmeCount(CosineAffinity({Axis(3, 0)}), 0),
                       doctest::Contains("max_speakers"),
                       std::invalid_argument);
}

TEST_CASE("speaker count is invariant under input permutation") {
  const auto e = BlockEmbeddings(3, 4, 8, 0.05, 6);
  const int k = NmeCount(CosineAffinity(e), 8).k;
  REQUIRE(k == 3);

  Rng rng(7);
  std::vector<Embedding> shuffled = e;
  for (size_t i = shuffled.size(); i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[rng.Bounded(i)]);
  }
  CHECK(NmeCount(CosineAffinity(shuffled), 8).k == k);
}

TEST_CASE("spectral clustering recovers noisy planted blocks") {
  const int per_block = 6;
  const auto e = BlockEmbeddings(3, per_block, 8, 0.05, 8);
  std::vector<int> truth(e.size());
  for (size_t i = 0; i < e.size(); ++i) {
    truth[i] = static_cast<int>(i) / per_block;
  }
  const auto labels = SpectralCluster(CosineAffinity(e), 3);
  CHECK(SamePartition(labels, truth));
}

TEST_CASE("spectral clustering is deterministic and validates k") {
  const auto e = BlockEmbeddings(2, 4, 4, 0.05, 9);
  const AffinityMatrix aff = CosineAffinity(e);
  CHECK(SpectralCluster(aff, 2) == SpectralCluster(aff, 2));
  CHECK_THROWS_WITH_AS(SpectralCluster(aff, 0), doctest::Contains("out of range"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(SpectralCluster(aff, 9), doctest::Contains("out of range"),
                       std::invalid_argument);
}

TEST_CASE("centroids are the renormalized per-cluster means") {
  const std::vector<Embedding> e = {Axis(2, 0), Axis(2, 1),
                                    Embedding({0.6, 0.8})};
  const auto c = Centroids(e, {0, 1, 0});
  REQUIRE(c.size() == 2);
  // Cluster 0 mean is (0.8, 0.4), unit-normalized (2, 1)/sqrt(5).
  const double s = 1.0 / std::sqrt(5.0);
  CHECK(c[0].values()[0] == doctest::Approx(2.0 * s));
  CHECK(c[0].values()[1] == doctest::Approx(1.0 * s));
  CHECK(c[1].values()[0] == doctest::Approx(0.0));
  CHECK(c[1].values()[1] == doctest::Approx(1.0));
}

TEST_CASE("centroid extraction rejects malformed labelings") {
  const std::vector<Embedding> e = {Axis(2, 0), Axis(2, 1)};
  CHECK_THROWS_WITH_AS(Centroids(e, {0}), doctest::Contains("differ in length"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(Centroids(e, {0, -1}), doctest::Contains("negative label"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(Centroids(e, {0, 2}), doctest::Contains("empty cluster 1"),
                       std::invalid_argument);
  const std::vector<Embedding> opposed = {Embedding({1.0, 0.0}),
                                          Embedding({-1.0, 0.0})};
  CHECK_THROWS_WITH_AS(Centroids(opposed, {0, 0}),
                       doctest::Contains("cannot normalize"),
                       std::invalid_argument);
}

TEST_CASE("leakage filter keeps candidates near any reference") {
  const std::vector<Embedding> refs = {Axis(3, 0), Axis(3, 1)};
  auto tilted = [](double c, int axis) {
    std::vector<double> v(3, 0.0);
    v[axis] = c;
    v[2] = std::sqrt(1.0 - c * c);
    return Embedding(v);
  };
  // Distances to the nearest reference: 0.04, 0.30, 0.04, 0.06.
  const std::vector<Embedding> cands = {tilted(0.96, 0), tilted(0.70, 0),
                                        tilted(0.96, 1), tilted(0.94, 1)};
  CHECK(LeakageFilter(cands, refs, 0.05) == std::vector<int>{0, 2});
  CHECK(LeakageFilter(cands, refs, 0.31) == std::vector<int>{0, 1, 2, 3});
  CHECK(LeakageFilter(cands, refs, 0.001).empty());
}

TEST_CASE("leakage filter boundary is inclusive") {
  const std::vector<Embedding> refs = {Axis(2, 0)};
  const Embedding cand({0.9, std::sqrt(1.0 - 0.81)});
  const double d = 1.0 - cand.Dot(refs[0]);
  CHECK(LeakageFilter({cand}, refs, d) == std::vector<int>{0});
  CHECK(LeakageFilter({cand}, refs, d - 1e-9).empty());
}

TEST_CASE("leakage filter grows monotonically with the threshold") {
  Rng rng(10);
  std::vector<Embedding> cands, refs;
  for (int i = 0; i < 20; ++i) cands.emplace_back(RandomUnitVector(&rng, 6));
  for (int i = 0; i < 3; ++i) refs.emplace_back(RandomUnitVector(&rng, 6));
  std::vector<int> prev;
  for (double t : {0.0, 0.2, 0.5, 1.0, 2.0}) {
    const auto kept = LeakageFilter(cands, refs, t);
    CHECK(std::is_sorted(kept.begin(), kept.end()));
    CHECK(std::includes(kept.begin(), kept.end(), prev.begin(), prev.end()));
    prev = kept;
  }
  CHECK(prev.size() == cands.size());
}

TEST_CASE("leakage filter rejects mismatched dimensions") {
  CHECK_THROWS_WITH_AS(LeakageFilter({Axis(2, 0)}, {Axis(3, 0)}, 0.05),
                       doctest::Contains("dimensions differ"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(LeakageFilter({}, {Axis(3, 0)}, 0.05),
                       doctest::Contains("no embeddings"),
                       std::invalid_argument);
}

TEST_CASE("end-to-end clustering finds count, labels, and centroids") {
  const int per_block = 8;
  const auto e = BlockEmbeddings(2, per_block, 8, 0.05, 11);
  const ClusterResult r = Cluster(e);
  REQUIRE(r.k == 2);
  REQUIRE(r.centroids.size() == 2);
  CHECK(r.eigengaps.size() == e.size() - 1);

  std::vector<int> truth(e.size());
  for (size_t i = 0; i < e.size(); ++i) {
    truth[i] = static_cast<int>(i) / per_block;
  }
  CHECK(SamePartition(r.labels, truth));

  // Each centroid must hug its block's axis.
  for (int c = 0; c < 2; ++c) {
    double best = 0.0;
    for (int axis = 0; axis < 2; ++axis) {
      best = std::max(best, r.centroids[c].Dot(Axis(8, axis)));
    }
    CHECK(best > 0.99);
  }
}

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

#include <set>
#include <vector>

#include "sasr/kmeans.h"
#include "sasr/rng.h"

using namespace sasr;

namespace {

// Two tight planted blobs far apart.
Matrix TwoBlobs(Rng* rng, int per_blob) {
  Matrix pts(2 * per_blob, 2);
  for (int i = 0; i < per_blob; ++i) {
    pts(i, 0) = 0.0 + 0.01 * rng->Gaussian();
    pts(i, 1) = 0.0 + 0.01 * rng->Gaussian();
    pts(per_blob + i, 0) = 10.0 + 0.01 * rng->Gaussian();
    pts(per_blob + i, 1) = 10.0 + 0.01 * rng->Gaussian();
  }
  return pts;
}

}  // namespace

TEST_CASE("separated blobs are recovered exactly") {
  Rng rng(1);
  const Matrix pts = TwoBlobs(&rng, 20);
  const KmeansResult r = Kmeans(pts, 2);
  REQUIRE(r.labels.size() == 40);
  for (int i = 1; i < 20; ++i) {
    CHECK(r.labels[i] == r.labels[0]);
    CHECK(r.labels[20 + i] == r.labels[20]);
  }
  CHECK(r.labels[0] != r.labels[20]);
  CHECK(r.inertia < 0.1);
}

TEST_CASE("same seed gives identical results") {
  Rng rng(2);
  Matrix pts(30, 3);
  for (int i = 0; i < 30; ++i) {
    for (int d = 0; d < 3; ++d) pts(i, d) = rng.Uniform(-1.0, 1.0);
  }
  const KmeansResult a = Kmeans(pts, 4, {99, 100, 1e-8});
  const KmeansResult b = Kmeans(pts, 4, {99, 100, 1e-8});
  CHECK(a.labels == b.labels);
  CHECK(a.centroids == b.centroids);
  CHECK(a.inertia == b.inertia);
}

TEST_CASE("k equal to one returns the mean") {
  Matrix pts(4, 1);
  pts(0, 0) = 1.0; pts(1, 0) = 2.0; pts(2, 0) = 3.0; pts(3, 0) = 6.0;
  const KmeansResult r = Kmeans(pts, 1);
  CHECK(r.centroids(0, 0) == doctest::Approx(3.0).epsilon(1e-12));
  for (int label : r.labels) CHECK(label == 0);
}

TEST_CASE("k equal to n isolates every distinct point") {
  Matrix pts(5, 1);
  for (int i = 0; i < 5; ++i) pts(i, 0) = static_cast<double>(i * i);
  const KmeansResult r = Kmeans(pts, 5);
  std::set<int> used(r.labels.begin(), r.labels.end());
  CHECK(used.size() == 5);
  CHECK(r.inertia == doctest::Approx(0.0));
}

TEST_CASE("nearest ties go to the lowest centroid index") {
  // Centroids at -1 and +1; a point at exactly 0 is equidistant.
  Matrix pts(1, 1);
  pts(0, 0) = 0.0;
  Matrix centroids(2, 1);
  centroids(0, 0) = -1.0;
  centroids(1, 0) = 1.0;
  std::vector<int> labels;
  std::vector<double> dists;
  AssignNearestSerial(pts, centroids, labels, dists);
  REQUIRE(labels.size() == 1);
  CHECK(labels[0] == 0);
  CHECK(dists[0] == doctest::Approx(1.0));
}

TEST_CASE("identical points still yield k non-empty clusters") {
  // With fewer distinct values than clusters the split is degenerate,
  // but every cluster must stay populated and the run deterministic.
  Matrix pts(4, 1, 7.0);
  const KmeansResult a = Kmeans(pts, 3);
  const KmeansResult b = Kmeans(pts, 3);
  CHECK(a.labels == b.labels);
  std::set<int> used(a.labels.begin(), a.labels.end());
  CHECK(used.size() == 3);
  CHECK(a.inertia == doctest::Approx(0.0));
}

TEST_CASE("invalid k is rejected") {
  Matrix pts(3, 2, 0.0);
  CHECK_THROWS_AS(Kmeans(pts, 0), std::invalid_argument);
  CHECK_THROWS_AS(Kmeans(pts, 4), std::invalid_argument);
}

TEST_CASE("duplicated points still split when enough are distinct") {
  // Three copies of each of three sites; k=3 must carve them apart via
  // the empty-cluster repair if initialization collapses.
  Matrix pts(9, 1);
  for (int i = 0; i < 9; ++i) pts(i, 0) = static_cast<double>(i / 3);
  for (uint64_t seed = 0; seed < 8; ++seed) {
    const KmeansResult r = Kmeans(pts, 3, {seed, 100, 1e-8});
    CHECK(r.inertia == doctest::Approx(0.0));
    std::set<int> used(r.labels.begin(), r.labels.end());
    CHECK(used.size() == 3);
    for (int i = 0; i < 9; i += 3) {
      CHECK(r.labels[i] == r.labels[i + 1]);
      CHECK(r.labels[i] == r.labels[i + 2]);
    }
  }
}

TEST_CASE("inertia equals the summed squared distances of the labeling") {
  Rng rng(12);
  Matrix pts(25, 4);
  for (int i = 0; i < 25; ++i) {
    for (int d = 0; d < 4; ++d) pts(i, d) = rng.Uniform(0.0, 5.0);
  }
  const KmeansResult r = Kmeans(pts, 3);
  double total = 0.0;
  for (int i = 0; i < 25; ++i) {
    double best = 0.0;
    for (int d = 0; d < 4; ++d) {
      const double diff = pts(i, d) - r.centroids(r.labels[i], d);
      best += diff * diff;
    }
    total += best;
    // The assigned centroid is at least as close as any other.
    for (int c = 0; c < 3; ++c) {
      double alt = 0.0;
      for (int d = 0; d < 4; ++d) {
        const double diff = pts(i, d) - r.centroids(c, d);
        alt += diff * diff;
      }
      REQUIRE(best <= alt + 1e-9);
    }
  }
  CHECK(r.inertia == doctest::Approx(total).epsilon(1e-9));
}

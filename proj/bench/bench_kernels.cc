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

// Times each parallel kernel against its serial reference and checks
// the outputs still agree bitwise. Not a ctest; run it by hand:
//
//   ./bench_kernels [scale]
//
// where scale (default 1) multiplies the problem sizes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "sasr/clustering.h"
#include "sasr/kmeans.h"
#include "sasr/matrix.h"
#include "sasr/metrics.h"
#include "sasr/parallel.h"
#include "sasr/rng.h"
#include "sasr/types.h"

namespace {

using Clock = std::chrono::steady_clock;

double BestOfMs(const std::function<void()>& body, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    body();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

std::vector<sasr::Embedding> RandomEmbeddings(int n, int dim, uint64_t seed) {
  sasr::Rng rng(seed);
  std::vector<sasr::Embedding> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.emplace_back(sasr::RandomUnitVector(&rng, dim));
  }
  return out;
}

sasr::Matrix RandomMatrix(int rows, int cols, uint64_t seed) {
  sasr::Rng rng(seed);
  sasr::Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.Uniform(-1.0, 1.0);
  }
  return m;
}

std::vector<std::vector<sasr::Token>> RandomStreams(int count, int len, uint64_t seed) {
  sasr::Rng rng(seed);
  std::vector<std::vector<sasr::Token>> out(static_cast<size_t>(count));
  for (auto& stream : out) {
    const int n = 1 + static_cast<int>(rng.Bounded(static_cast<uint64_t>(len)));
    for (int i = 0; i < n; ++i) {
      stream.emplace_back(std::string(1, static_cast<char>('a' + rng.Bounded(6))));
    }
  }
  return out;
}

void Report(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-22s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              equal ? "outputs match" : "OUTPUTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  const int scale = argc > 1 ? std::max(1, std::atoi(argv[1])) : 1;
  const int reps = 3;
  std::printf("threads: %d, scale: %d\n", sasr::HardwareThreads(), scale);

  {
    const auto embs = RandomEmbeddings(400 * scale, 128, 11);
    sasr::AffinityMatrix serial_out, parallel_out;
    const double s = BestOfMs([&] { serial_out = sasr::CosineAffinitySerial(embs); }, reps);
    const double p = BestOfMs([&] { parallel_out = sasr::CosineAffinity(embs); }, reps);
    Report("cosine_affinity", s, p, serial_out.values == parallel_out.values);
  }

  {
    const sasr::Matrix points = RandomMatrix(20000 * scale, 64, 12);
    const sasr::Matrix centroids = RandomMatrix(32, 64, 13);
    std::vector<int> ls, lp;
    std::vector<double> ds, dp;
    const double s =
        BestOfMs([&] { sasr::AssignNearestSerial(points, centroids, ls, ds); }, reps);
    const double p =
        BestOfMs([&] { sasr::AssignNearest(points, centroids, lp, dp); }, reps);
    Report("assign_nearest", s, p, ls == lp && ds == dp);
  }

  {
    const auto refs = RandomStreams(48 * scale, 64, 14);
    const auto hyps = RandomStreams(48 * scale, 64, 15);
    std::vector<std::vector<sasr::EditCounts>> serial_out, parallel_out;
    const double s =
        BestOfMs([&] { serial_out = sasr::PairwiseEditCountsSerial(refs, hyps); }, reps);
    const double p =
        BestOfMs([&] { parallel_out = sasr::PairwiseEditCounts(refs, hyps); }, reps);
    Report("pairwise_edit_counts", s, p, serial_out == parallel_out);
  }

  return 0;
}

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

#ifndef SASR_RNG_H_
#define SASR_RNG_H_

// Deterministic PRNG used everywhere randomness is needed.
//
// Generator: xoshiro256** 1.0 (Blackman & Vigna), seeded through four
// rounds of splitmix64 on the user seed. All derived distributions
// (uniform doubles, bounded integers, Box-Muller gaussians) are defined
// in this header and nowhere else, so a recorded seed fully determines
// every stream this toolkit produces. std::random distributions are
// intentionally not used; their output is implementation-defined.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace sasr {

inline uint64_t SplitMix64(uint64_t* state) {
  uint64_t z = (*state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stateless seed mixer for deriving independent streams (e.g. one
// substream per segment, keyed by payload bits).
inline uint64_t MixSeed(uint64_t a, uint64_t b) {
  uint64_t state = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  return SplitMix64(&state);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : state_) word = SplitMix64(&sm);
  }

  uint64_t Next() {
    const uint64_t result = Rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = Rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform in [0, n). Modulo reduction; the bias is negligible for the
  // small ranges used here and keeps the mapping trivially portable.
  uint64_t Bounded(uint64_t n) { return n == 0 ? 0 : Next() % n; }

  // Uniform integer in [lo, hi], inclusive.
  int UniformInt(int lo, int hi) {
    return lo + static_cast<int>(Bounded(static_cast<uint64_t>(hi - lo) + 1));
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Standard normal via Box-Muller (no cached spare; one draw per call).
  double Gaussian() {
    const double u1 = 1.0 - Uniform();  // (0, 1]
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  static uint64_t Rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<uint64_t, 4> state_;
};

// Uniform direction on the unit sphere (isotropic Gaussian,
// normalized). Consumes exactly dim draws per accepted vector; the
// zero-norm retry is unreachable in practice.
inline std::vector<double> RandomUnitVector(Rng* rng, int dim) {
  std::vector<double> v(static_cast<size_t>(dim));
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (double& x : v) {
      x = rng->Gaussian();
      norm_sq += x * x;
    }
  } while (norm_sq < 1e-12);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : v) x *= inv;
  return v;
}

}  // namespace sasr

#endif  // SASR_RNG_H_

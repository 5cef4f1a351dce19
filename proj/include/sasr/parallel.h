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

#ifndef SASR_PARALLEL_H_
#define SASR_PARALLEL_H_

// OpenMP loop helpers. Every parallel kernel in this toolkit writes each
// output element from exactly one iteration and performs no cross-
// iteration reductions, so results are bit-identical to the serial
// reference implementations regardless of thread count.

#include <exception>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sasr {

inline int HardwareThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs fn(i) for i in [0, n). Exceptions thrown by iterations are
// captured and rethrown after the loop (the first one wins), since
// exceptions must not cross an OpenMP region boundary.
template <typename Fn>
void ParallelFor(int n, Fn&& fn) {
  std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
#else
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      if (!error) error = std::current_exception();
    }
  }
#endif
  if (error) std::rethrow_exception(error);
}

}  // namespace sasr

#endif  // SASR_PARALLEL_H_

#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

// Data-parallel loop wrapper. Callers only use it where iterations write to
// disjoint state, so serial and parallel execution are bit-identical; the
// serial path is kept as the reference implementation for tests and the
// benchmark target.

namespace plad::parallel {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class Fn>
void for_range(std::size_t n, int n_threads, Fn&& fn) {
#ifdef _OPENMP
  if (n_threads > 1 && n > 1) {
#pragma omp parallel for schedule(static) num_threads(n_threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)n_threads;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

/// Serial reference loop; identical contract to for_range(n, 1, fn).
template <class Fn>
void for_range_serial(std::size_t n, Fn&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace plad::parallel

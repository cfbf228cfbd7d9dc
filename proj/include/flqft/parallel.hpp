#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flqft {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Chunked sum with a fixed reduction tree: per-chunk partials are accumulated
// serially inside each chunk and combined in chunk order, so the result is
// bit-identical whether the chunk loop runs serially or under OpenMP.
template <class T, class F>
T chunked_sum(std::int64_t n, std::int64_t chunk, const F& body, bool parallel = true) {
  if (n <= 0) return T{};
  chunk = std::max<std::int64_t>(1, chunk);
  const std::int64_t nchunks = (n + chunk - 1) / chunk;
  std::vector<T> partial(static_cast<size_t>(nchunks), T{});
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && nchunks > 1)
#endif
  for (std::int64_t c = 0; c < nchunks; ++c) {
    T acc{};
    const std::int64_t hi = std::min(n, (c + 1) * chunk);
    for (std::int64_t i = c * chunk; i < hi; ++i) acc += body(i);
    partial[static_cast<size_t>(c)] = acc;
  }
  T total{};
  for (const T& p : partial) total += p;
  return total;
}

// Parallel map over an index range writing into caller-provided storage;
// deterministic because each index owns its slot.
template <class F>
void parallel_for_index(std::int64_t n, const F& body, bool parallel = true) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && n > 1)
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
#ifndef _OPENMP
  (void)parallel;
#endif
}

}  // namespace flqft

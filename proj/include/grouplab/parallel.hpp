#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace grouplab {

/// Every parallel kernel in this library also has a serial path selected by
/// this flag. The serial path is the reference implementation; tests compare
/// the two and the bench target times them against each other.
enum class Exec { serial, parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

/// Plain parallel loop, body(i) for i in [0, n). The body must only write to
/// index-owned state; result assembly stays deterministic because slots are
/// preallocated by index.
template <class F>
void parallel_for(Exec exec, std::int64_t n, F&& body) {
#ifdef _OPENMP
  if (exec == Exec::parallel && n > 1) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  (void)exec;
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

/// Smallest index in [0, n) where pred(i) is true, or nullopt. Runs in blocks
/// so the parallel path can stop early; the returned index is the scan-order
/// minimum regardless of thread count.
template <class Pred>
std::optional<std::int64_t> first_index(Exec exec, std::int64_t n, Pred&& pred,
                                        std::int64_t block = 8192) {
  [[maybe_unused]] constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();
#ifdef _OPENMP
  if (exec == Exec::parallel && n > 1) {
    for (std::int64_t lo = 0; lo < n; lo += block) {
      const std::int64_t hi = std::min(n, lo + block);
      std::int64_t found = kNone;
#pragma omp parallel for schedule(dynamic, 64) reduction(min : found)
      for (std::int64_t i = lo; i < hi; ++i) {
        if (pred(i)) found = std::min(found, i);
      }
      if (found != kNone) return found;
    }
    return std::nullopt;
  }
#endif
  (void)exec;
  (void)block;
  for (std::int64_t i = 0; i < n; ++i)
    if (pred(i)) return i;
  return std::nullopt;
}

}  // namespace grouplab

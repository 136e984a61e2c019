#pragma once

#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cutsel {

/// Serial reference for map_indexed; kept for testing and benchmarking
/// against the OpenMP path.
template <typename R>
std::vector<R> map_indexed_serial(int count, const std::function<R(int)>& fn) {
  std::vector<R> out(count);
  for (int i = 0; i < count; ++i) out[i] = fn(i);
  return out;
}

/// Evaluates fn(i) for i in [0, count) and returns results keyed by index,
/// so the output is identical regardless of scheduling. Tasks must be
/// independent (each rollout owns its environment and RNG). threads <= 0
/// uses the OpenMP default; threads == 1 runs the serial reference.
template <typename R>
std::vector<R> map_indexed(int count, int threads, const std::function<R(int)>& fn) {
#ifdef _OPENMP
  if (threads != 1) {
    std::vector<R> out(count);
    if (threads > 1) omp_set_num_threads(threads);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
#endif
  return map_indexed_serial(count, fn);
}

}  // namespace cutsel

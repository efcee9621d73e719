#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace n2e {

// Worker budget semantics: 0 means "let OpenMP decide", 1 means the serial
// reference path, >1 requests that many OpenMP threads. Results of every
// kernel in this project must be identical for any budget; parallelism is
// allowed to change wall time only. To keep that guarantee, kernels write
// into per-index slots and all floating-point reductions happen serially
// afterwards.
inline int effective_workers(int requested) {
#ifdef _OPENMP
  if (requested <= 0) return omp_get_max_threads();
  return requested;
#else
  (void)requested;
  return 1;
#endif
}

template <typename Body>
void parallel_for(std::int64_t n, int workers, Body&& body) {
  if (n <= 0) return;
#ifdef _OPENMP
  const int w = effective_workers(workers);
  if (w > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(w)
    for (std::int64_t i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    body(i);
  }
}

double wall_time_s();

}  // namespace n2e

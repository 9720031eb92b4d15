#ifndef TECHMAP_PARALLEL_HPP
#define TECHMAP_PARALLEL_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace techmap {

// Runs body(i) for i in [0, n). With jobs <= 1 this is a plain serial loop,
// kept as the reference path for testing. With jobs > 1 the iterations run
// under OpenMP. Callers must write results into per-index slots (no shared
// mutable state) so both paths produce identical output.
template <typename Body>
void parallel_for(int jobs, std::size_t n, Body&& body) {
#ifdef _OPENMP
  if (jobs > 1) {
#pragma omp parallel for schedule(dynamic, 8) num_threads(jobs)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  (void)jobs;
  for (std::size_t i = 0; i < n; ++i) body(i);
}

inline int hardware_jobs() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace techmap

#endif

#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rsopt {

/// Replications are independent by construction (each owns its random
/// streams), so the sweep is a plain parallel-for over the replication
/// index. `threads == 1` runs the serial reference path; `threads == 0`
/// uses the OpenMP default. Results must be written to per-index slots so
/// that serial and parallel execution produce identical output.
template <typename Fn>
void for_each_replication(int count, int threads, Fn&& fn) {
#ifdef _OPENMP
  if (threads != 1) {
    const int n = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(n)
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
#endif
  for (int k = 0; k < count; ++k) fn(k);
}

}  // namespace rsopt

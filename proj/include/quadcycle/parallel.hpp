#pragma once

#include <cstddef>

#ifdef QUADCYCLE_HAVE_OPENMP
#include <omp.h>
#endif

namespace quadcycle::par {

/// Worker count: hardware threads, capped by the QUADCYCLE_THREADS
/// environment variable when set.
int max_threads();

/// Runs f(i) for i in [0, n).  Iterations must be independent; results must
/// be written by index so the outcome does not depend on scheduling.  f must
/// not throw.
template <class F>
void parallel_for(std::size_t n, F&& f) {
#ifdef QUADCYCLE_HAVE_OPENMP
    const int nt = max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        f(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) f(i);
#endif
}

} // namespace quadcycle::par

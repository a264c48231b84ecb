#include "quadcycle/parallel.hpp"

#include <cstdlib>
#include <string>

namespace quadcycle::par {

int max_threads() {
#ifdef QUADCYCLE_HAVE_OPENMP
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("QUADCYCLE_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1 && cap < n) n = cap;
        } catch (...) {
            // unparsable cap ignored
        }
    }
    return n;
#else
    return 1;
#endif
}

} // namespace quadcycle::par

#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fcpca {

/// Resolve a requested worker count: 0 means "all available".
inline int effective_threads(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

} // namespace fcpca

#pragma once

#include "sghh/sparse.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sghh {

enum class Assembly { Serial, Parallel };

namespace detail {

template <class Body>
void for_each_index(Index n, Assembly mode, Body&& body) {
    if (mode == Assembly::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < static_cast<long long>(n); ++i) body(static_cast<Index>(i));
    } else {
        for (Index i = 0; i < n; ++i) body(i);
    }
}

inline int thread_id() {
#ifdef _OPENMP
    return omp_get_thread_num();
#else
    return 0;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace detail
}  // namespace sghh

#ifndef GEONIUM_PARALLEL_HPP
#define GEONIUM_PARALLEL_HPP

#include <cstddef>

#include <omp.h>

namespace geonium::par {

// Worker count: min(omp_get_max_threads(), GEONIUM_THREADS) when the
// environment variable is set, at least 1.
int max_threads();

enum class Execution { serial, parallel };

// Element-wise map over [0, n). Each index is computed independently, so
// serial and parallel execution produce bit-identical results; the serial
// path is the reference the tests compare against.
template <class F>
void for_each_index(std::size_t n, Execution exec, F&& body) {
    if (exec == Execution::parallel && max_threads() > 1) {
        const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(max_threads())
        for (long long i = 0; i < nn; ++i) body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) body(i);
    }
}

}  // namespace geonium::par

#endif

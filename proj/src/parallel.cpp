#include "geonium/parallel.hpp"

#include <cstdlib>
#include <string>

namespace geonium::par {

int max_threads() {
    static const int cached = [] {
        int n = omp_get_max_threads();
        if (const char* env = std::getenv("GEONIUM_THREADS")) {
            try {
                int cap = std::stoi(env);
                if (cap >= 1) n = std::min(n, cap);
            } catch (...) {
                // unparsable value: ignore
            }
        }
        return n < 1 ? 1 : n;
    }();
    return cached;
}

}  // namespace geonium::par

#include "bornforge/threads.hpp"

#include <cstdlib>
#include <omp.h>
#include <string>

namespace bornforge {

int apply_thread_limit_from_env() {
    if (const char* env = std::getenv("BORNFORGE_THREADS")) {
        try {
            const int requested = std::stoi(env);
            if (requested >= 1 && requested < omp_get_max_threads())
                omp_set_num_threads(requested);
        } catch (...) {
            // ignore malformed values, keep the OpenMP default
        }
    }
    return omp_get_max_threads();
}

}  // namespace bornforge

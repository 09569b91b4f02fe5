#include "subergo/exec.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subergo {

int worker_cap() {
    const char* v = std::getenv("SUBERGO_THREADS");
    if (v == nullptr || *v == '\0') return 0;
    try {
        const int n = std::stoi(v);
        return n > 0 ? n : 0;
    } catch (const std::exception&) {
        return 0;
    }
}

void apply_worker_cap() {
#ifdef _OPENMP
    if (const int cap = worker_cap(); cap > 0) omp_set_num_threads(cap);
#endif
}

}  // namespace subergo

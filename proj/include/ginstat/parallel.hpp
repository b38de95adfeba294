#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ginstat {

enum class Exec { serial, openmp };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_thread_count(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

/// Runs fn(i) for i in [0, count). Each invocation writes only to its own
/// output slot, so parallel and serial schedules produce identical results.
template <typename Fn>
void indexed_for(std::size_t count, Exec exec, Fn&& fn) {
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
    // exceptions may not escape the parallel region; capture and rethrow
    std::exception_ptr eptr;
    std::mutex mtx;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(mtx);
            if (!eptr) eptr = std::current_exception();
        }
    }
    if (eptr) std::rethrow_exception(eptr);
#else
    for (std::size_t i = 0; i < count; ++i) fn(i);
#endif
}

/// Per-index results gathered into a vector, then reduced in index order:
/// the reduction order is fixed regardless of the worker count.
template <typename Fn>
std::vector<double> indexed_map(std::size_t count, Exec exec, Fn&& fn) {
    std::vector<double> out(count);
    indexed_for(count, exec, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

template <typename Fn>
double indexed_sum(std::size_t count, Exec exec, Fn&& fn) {
    std::vector<double> parts = indexed_map(count, exec, fn);
    double acc = 0.0, comp = 0.0;
    for (double v : parts) {  // Kahan, fixed order
        double y = v - comp;
        double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc;
}

}  // namespace ginstat

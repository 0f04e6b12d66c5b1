#pragma once

// Shared-memory parallel helpers. Every parallel kernel in this library is
// written so that its result is bit-identical for any thread count: threads
// only write disjoint slots of pre-sized buffers, and all floating-point
// reductions happen afterwards in a fixed order.

#include <cstddef>
#include <exception>
#include <span>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dphi {

// Runs fn(i) for i in [0, n), possibly in parallel. Exceptions thrown by fn
// are captured and the first one is rethrown on the calling thread.
template <typename F>
void parallel_for(std::size_t n, F&& fn) {
    std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
#else
    for (std::size_t i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
            if (!err) err = std::current_exception();
        }
    }
#endif
    if (err) std::rethrow_exception(err);
}

// Pairwise summation with a fixed reduction tree. Deterministic for a given
// input vector regardless of how the values were produced, and considerably
// more accurate than left-to-right accumulation on long sums.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

} // namespace dphi

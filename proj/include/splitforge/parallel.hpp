// Independent-job maps: an OpenMP version and the serial reference it must match.
#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <type_traits>
#include <vector>

#include "splitforge/real.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace splitforge {

// Worker count: OpenMP default, capped by SPLITFORGE_THREADS when set.
inline int worker_threads() {
    int n = 1;
#ifdef _OPENMP
    n = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("SPLITFORGE_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0 && cap < n) n = cap;
    }
    return n;
}

template <class F>
auto serial_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    std::vector<std::invoke_result_t<F&, std::size_t>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
    return out;
}

// Results are stored by index, so output order never depends on scheduling.
// The first failing index (lowest) is rethrown after all jobs finish.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    using R = std::invoke_result_t<F&, std::size_t>;
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    const PrecisionContext ctx{thread_precision()};
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_threads())
    for (long i = 0; i < count; ++i) {
        PrecisionScope scope(ctx);
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace splitforge

#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace forestcalc {

/// Kernels come in two flavours: a plain loop kept as the reference and an
/// OpenMP loop. Both must return identical, canonically ordered results.
enum class Execution { serial, parallel };

inline int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Evaluates `fn(i)` for i in [0, n) and returns the results in index order,
/// independent of scheduling.
template <typename Result, typename Fn>
std::vector<Result> map_indexed(std::size_t n, Execution exec, Fn&& fn)
{
    std::vector<Result> out(n);
    if (exec == Execution::parallel) {
        // Exceptions may not cross the OpenMP region; keep the one with the
        // lowest index so failures match the serial loop.
        std::exception_ptr error;
        std::ptrdiff_t error_index = -1;
        std::mutex guard;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
            } catch (...) {
                std::lock_guard lock(guard);
                if (error_index < 0 || i < error_index) {
                    error = std::current_exception();
                    error_index = i;
                }
            }
        }
        if (error)
            std::rethrow_exception(error);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = fn(i);
    }
    return out;
}

} // namespace forestcalc

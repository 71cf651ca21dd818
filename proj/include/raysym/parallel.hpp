#pragma once

// Index-parallel loops. Each iteration writes only its own output slot, so the
// OpenMP and serial variants produce identical results. The first exception
// (by index) raised inside the loop is rethrown after the loop finishes.

#include <cstddef>
#include <exception>
#include <vector>

namespace raysym {

enum class Execution { Serial, Parallel };

template <typename Fn>
void for_each_index(Execution exec, std::size_t count, Fn&& fn) {
    std::vector<std::exception_ptr> errors(count);
    const auto n = static_cast<long long>(count);
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (long long i = 0; i < n; ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    } else {
        for (long long i = 0; i < n; ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace raysym

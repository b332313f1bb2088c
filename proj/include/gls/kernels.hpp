// SPDX-License-Identifier: MIT
//
// Index-parallel map used by every grid sweep. Each grid point is computed
// independently and written to its own slot, so the parallel kernel returns
// exactly what the serial reference returns, in grid order. Exceptions are
// captured per index and the lowest-index one is rethrown.
#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

namespace gls {

enum class Execution { serial, parallel };

namespace kernels {

template <class F>
using map_result_t = std::invoke_result_t<F&, std::size_t>;

template <class F>
std::vector<map_result_t<F>> map_indices_serial(std::size_t n, F&& f) {
    std::vector<map_result_t<F>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
    return out;
}

template <class F>
std::vector<map_result_t<F>> map_indices_parallel(std::size_t n, F&& f) {
    using R = map_result_t<F>;
    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            slots[k].emplace(f(k));
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

template <class F>
std::vector<map_result_t<F>> map_indices(Execution exec, std::size_t n, F&& f) {
    if (exec == Execution::serial || n < 2) return map_indices_serial(n, std::forward<F>(f));
    return map_indices_parallel(n, std::forward<F>(f));
}

}  // namespace kernels
}  // namespace gls

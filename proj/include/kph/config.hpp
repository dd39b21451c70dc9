#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace kph {

/// Size caps shared by the space and complex builders.
struct Limits {
    std::size_t max_points = 256;
    std::uint64_t cell_cap = 50'000'000;
};

/// Execution knobs. Results never depend on `threads`.
struct Options {
    unsigned threads = 1;
    Limits limits{};
};

inline unsigned hardware_threads() {
    return std::max(1U, std::thread::hardware_concurrency());
}

namespace detail {

/// Runs body(task) for task in [0, count) on up to `threads` workers.
/// Callers write results into per-task slots so the combined output is
/// independent of scheduling. The first exception thrown is rethrown.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(std::max(1U, threads), count);
    if (workers <= 1) {
        for (std::size_t t = 0; t < count; ++t) body(t);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t t = w; t < count; t += workers) body(t);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace detail
} // namespace kph

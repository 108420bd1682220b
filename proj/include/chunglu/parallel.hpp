#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace chunglu {

// Runs fn(i) for i in [0, count). Work items must be independent; results
// should be written to pre-sized slots so the outcome does not depend on
// scheduling. Falls back to a plain loop on single-core machines.
template <typename Fn>
void parallel_for_index(std::size_t count, Fn&& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::size_t n_threads = std::min<std::size_t>(hw, count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(error);
}

}  // namespace chunglu

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace citeflow {

// Runs fn(i) for every i in [0, count) on up to `jobs` threads. Indices are
// claimed through an atomic counter and each call must write only to slots it
// owns, so results cannot depend on the schedule. The first exception thrown
// by a worker is rethrown on the calling thread.
template <typename Fn>
void parallel_for_index(std::size_t count, unsigned jobs, Fn&& fn) {
    if (count == 0) return;
    if (jobs <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned n_threads = static_cast<unsigned>(
        std::min<std::size_t>(jobs, count));
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr error;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!error) error = std::current_exception();
                }
                next.store(count, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace citeflow

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace plateau::harness {

/// Calls fn(i) for every i in [0, count) on up to `workers` threads.
/// Indices are handed out dynamically; callers store results by index so
/// the outcome does not depend on scheduling. The first exception thrown
/// by any call is rethrown after all threads have joined.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn)
{
    if (count == 0)
        return;
    workers = std::max(1u, workers);
    if (workers == 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed))
                return;
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed = true;
            }
        }
    };
    const auto n_threads = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w)
        pool.emplace_back(body);
    pool.clear();
    if (error)
        std::rethrow_exception(error);
}

inline unsigned default_workers()
{
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace plateau::harness

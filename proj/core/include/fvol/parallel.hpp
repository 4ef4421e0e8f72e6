#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fvol {

/// Number of worker threads used by the data-parallel helpers.
inline unsigned worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/**
 * Calls fn(i) for every i in [0, count), splitting the range into contiguous
 * chunks over worker threads. fn must write only to slots owned by index i;
 * any ordered reduction happens after the call returns, so results do not
 * depend on the number of threads. The first exception thrown is rethrown.
 */
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned max_threads = 0) {
    unsigned threads = max_threads == 0 ? worker_count() : max_threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace fvol

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace powsum {

/// Number of workers used when a caller passes 0.
inline unsigned default_workers() noexcept
{
    unsigned const hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Calls body(i) for every i in [0, count), split into contiguous blocks.
/// Results must be written to per-index slots; reductions happen afterwards
/// in index order so output never depends on the worker count.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, unsigned workers = 0)
{
    if (workers == 0)
        workers = default_workers();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    std::size_t const block = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t const begin = w * block;
        std::size_t const end = std::min(count, begin + block);
        if (begin >= end)
            break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i)
                    body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    pool.clear(); // joins
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace powsum

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace domatic {

// Worker cap from DOMATIC_FORGE_WORKERS, else the hardware concurrency.
unsigned default_workers();

// Runs body(i) for i in [0, count) on up to `workers` threads. Work is split
// into contiguous index ranges; body must only write to slots owned by i.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
    const std::size_t threads = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t begin = count * t / threads;
        const std::size_t end = count * (t + 1) / threads;
        pool.emplace_back([begin, end, &body] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
}

}  // namespace domatic

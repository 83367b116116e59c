#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "flatstats/grassmann.hpp"

namespace flatstats {

/// 0 means "use available parallelism".
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs fn(range, worker) over `workers` contiguous chunks of [0, total).
/// Chunk boundaries depend only on (total, workers); callers merge per-worker
/// results with an associative operation so the outcome is independent of
/// scheduling and of the worker count.
inline void parallel_chunks(std::uint64_t total, unsigned workers,
                            const std::function<void(IndexRange, unsigned)>& fn) {
    workers = resolve_threads(workers);
    if (static_cast<std::uint64_t>(workers) > total) workers = total == 0 ? 1 : static_cast<unsigned>(total);
    const auto ranges = split_range(total, workers);
    if (workers == 1) {
        fn(ranges[0], 0);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                fn(ranges[w], w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace flatstats

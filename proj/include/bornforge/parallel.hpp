#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bornforge {

/// Trials per RNG sub-stream. Fixed so that results never depend on how many
/// workers run the batches.
inline constexpr std::uint64_t kBatchSize = std::uint64_t{1} << 14;

/// Resolves the worker count: an explicit request wins, then the
/// BORNFORGE_THREADS environment variable, then the hardware concurrency.
/// Zero means "auto" at every level.
std::size_t worker_count(std::size_t requested = 0);

struct BatchRange {
    std::uint64_t index = 0;
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
};

/// Splits [0, total) into kBatchSize-sized batches and evaluates
/// `fn(BatchRange)` for each, possibly concurrently. Results come back in
/// batch order; the first exception thrown by any batch is rethrown.
template <class Result, class Fn>
std::vector<Result> run_batches(std::uint64_t total, Fn&& fn, std::size_t requested_workers = 0,
                                std::uint64_t batch_size = kBatchSize) {
    const std::uint64_t batches = (total + batch_size - 1) / batch_size;
    std::vector<Result> results(batches);
    if (batches == 0) return results;

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= batches) return;
            try {
                const BatchRange range{b, b * batch_size, std::min(total, (b + 1) * batch_size)};
                results[b] = fn(range);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(batches);
                return;
            }
        }
    };

    const std::size_t workers =
        static_cast<std::size_t>(std::min<std::uint64_t>(worker_count(requested_workers), batches));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace bornforge

#include <gtest/gtest.h>

#include <cstdlib>
#include <stdexcept>

#include "bornforge/parallel.hpp"

namespace bornforge {
namespace {

TEST(RunBatches, CoversRangeInOrder) {
    const std::uint64_t total = 3 * kBatchSize + 17;
    const auto ranges = run_batches<BatchRange>(total, [](const BatchRange& r) { return r; }, 3);
    ASSERT_EQ(ranges.size(), 4u);
    std::uint64_t next = 0;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        EXPECT_EQ(ranges[i].index, i);
        EXPECT_EQ(ranges[i].begin, next);
        next = ranges[i].end;
    }
    EXPECT_EQ(next, total);
}

TEST(RunBatches, ResultIndependentOfWorkers) {
    const auto f = [](const BatchRange& r) { return r.begin * 31 + r.end; };
    const auto one = run_batches<std::uint64_t>(10 * kBatchSize, f, 1);
    const auto four = run_batches<std::uint64_t>(10 * kBatchSize, f, 4);
    EXPECT_EQ(one, four);
}

TEST(RunBatches, RethrowsWorkerException) {
    EXPECT_THROW(run_batches<int>(
                     5 * kBatchSize,
                     [](const BatchRange& r) -> int {
                         if (r.index == 3) throw std::runtime_error("boom");
                         return 0;
                     },
                     2),
                 std::runtime_error);
}

TEST(WorkerCount, ExplicitAndEnvironment) {
    EXPECT_EQ(worker_count(3), 3u);
    setenv("BORNFORGE_THREADS", "2", 1);
    EXPECT_EQ(worker_count(0), 2u);
    setenv("BORNFORGE_THREADS", "0", 1);
    EXPECT_GE(worker_count(0), 1u);
    unsetenv("BORNFORGE_THREADS");
    EXPECT_GE(worker_count(0), 1u);
}

}  // namespace
}  // namespace bornforge

#include <gtest/gtest.h>

#include <cmath>

#include "bornforge/sampling.hpp"
#include "bornforge/stats.hpp"
#include "test_util.hpp"

namespace bornforge::stats {
namespace {

using testing_util::kind_of;

/// Closed-form Wilson score interval, written out independently.
Interval wilson_oracle(double s, double n, double z) {
    const double p = s / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    return {centre - half, centre + half};
}

TEST(Wilson, ZeroSuccessesHasZeroLowerBound) {
    const auto ci = wilson_interval(0, 100, 0.95);
    EXPECT_EQ(ci.low, 0.0);
    EXPECT_GT(ci.high, 0.0);
}

TEST(Wilson, AllSuccessesHasUnitUpperBound) {
    const auto ci = wilson_interval(100, 100, 0.95);
    EXPECT_EQ(ci.high, 1.0);
    EXPECT_LT(ci.low, 1.0);
}

TEST(Wilson, HalfSuccessesSymmetric) {
    const auto ci = wilson_interval(50, 100, 0.95);
    EXPECT_NEAR(0.5 * (ci.low + ci.high), 0.5, 1e-15);
    EXPECT_NEAR(0.5 * (ci.high - ci.low), 0.097, 1e-3);
    const auto oracle = wilson_oracle(50, 100, 1.959963984540054);
    EXPECT_NEAR(ci.low, oracle.low, 1e-9);
    EXPECT_NEAR(ci.high, oracle.high, 1e-9);
}

TEST(Wilson, MatchesOracleAcrossCounts) {
    for (std::uint64_t s : {1u, 7u, 33u, 90u, 99u}) {
        const auto ci = wilson_interval(s, 100, 0.95);
        const auto oracle = wilson_oracle(static_cast<double>(s), 100, 1.959963984540054);
        EXPECT_NEAR(ci.low, oracle.low, 1e-9);
        EXPECT_NEAR(ci.high, oracle.high, 1e-9);
        EXPECT_LE(ci.low, s / 100.0);
        EXPECT_GE(ci.high, s / 100.0);
    }
}

TEST(Wilson, WidthShrinksAsInverseRootN) {
    const double w2 = wilson_interval(30, 100).high - wilson_interval(30, 100).low;
    const double w4 = wilson_interval(3000, 10000).high - wilson_interval(3000, 10000).low;
    const double w6 = wilson_interval(300000, 1000000).high - wilson_interval(300000, 1000000).low;
    EXPECT_NEAR(w2 / w4, 10.0, 0.2);
    EXPECT_NEAR(w4 / w6, 10.0, 0.02);
}

TEST(Wilson, InvalidCounts) {
    EXPECT_EQ(kind_of([] { wilson_interval(5, 4); }), ErrorKind::InvalidCount);
    EXPECT_EQ(kind_of([] { wilson_interval(0, 0); }), ErrorKind::InvalidCount);
}

TEST(NormalQuantile, NinetyFivePercent) {
    EXPECT_NEAR(normal_quantile_two_sided(0.95), 1.959963984540054, 1e-9);
    EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
}

TEST(ChiSquare, PerfectFitIsZero) {
    const std::vector<double> e{10, 20, 30};
    const auto r = chi_square(e, e);
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_EQ(r.dof, 2u);
    EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(ChiSquare, HandExample) {
    const std::vector<double> o{60, 40};
    const std::vector<double> e{50, 50};
    const auto r = chi_square(o, e);
    EXPECT_DOUBLE_EQ(r.statistic, 4.0);
    EXPECT_EQ(r.dof, 1u);
}

TEST(ChiSquare, TailMatchesTabulatedQuantiles) {
    // Upper 5% and 0.1% points of the chi-square law.
    EXPECT_NEAR(chi_square_upper_tail(18.307038, 10), 0.05, 2e-3);
    EXPECT_NEAR(chi_square_upper_tail(66.338649, 49), 0.05, 1e-3);
    EXPECT_NEAR(chi_square_upper_tail(85.351, 49), 0.001, 2e-4);
    EXPECT_NEAR(chi_square_upper_tail(7.814728, 3), 0.05, 2e-3);
}

TEST(ChiSquare, Errors) {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{1, 2};
    const std::vector<double> z{1, 0, 2};
    EXPECT_EQ(kind_of([&] { chi_square(a, b); }), ErrorKind::DimensionMismatch);
    EXPECT_EQ(kind_of([&] { chi_square(a, z); }), ErrorKind::ZeroExpected);
}

TEST(KolmogorovSmirnov, QuantileGridIsClose) {
    const std::size_t m = 200;
    std::vector<double> xs(m);
    for (std::size_t i = 0; i < m; ++i) xs[i] = static_cast<double>(i + 1) / (m + 1);
    EXPECT_LE(ks_statistic(xs, [](double x) { return x; }), 1.0 / m);
}

TEST(KolmogorovSmirnov, SingleSampleAtMedian) {
    const std::vector<double> xs{0.5};
    EXPECT_DOUBLE_EQ(ks_statistic(xs, [](double x) { return x; }), 0.5);
}

TEST(KolmogorovSmirnov, Errors) {
    const std::vector<double> none;
    const std::vector<double> unsorted{0.3, 0.1};
    EXPECT_EQ(kind_of([&] { ks_statistic(none, [](double x) { return x; }); }), ErrorKind::EmptySample);
    EXPECT_EQ(kind_of([&] { ks_statistic(unsorted, [](double x) { return x; }); }), ErrorKind::InvalidArgument);
}

TEST(KolmogorovSmirnov, CriticalValue) {
    const double m = 1e5;
    const double c = std::sqrt(-0.5 * std::log(0.0005));
    EXPECT_NEAR(ks_critical_value(100000, 1e-3), c / (std::sqrt(m) + 0.12 + 0.11 / std::sqrt(m)), 1e-12);
    EXPECT_NEAR(ks_critical_value(100000, 1e-3) * std::sqrt(m), 1.95, 0.01);
}

TEST(TotalVariation, Examples) {
    const std::vector<double> p{0.5, 0.3, 0.2};
    const std::vector<double> q{0.3, 0.5, 0.2};
    const std::vector<double> e1{1.0, 0.0};
    const std::vector<double> e2{0.0, 1.0};
    EXPECT_EQ(total_variation(p, p), 0.0);
    EXPECT_EQ(total_variation(e1, e2), 1.0);
    EXPECT_NEAR(total_variation(p, q), 0.2, 1e-15);
    EXPECT_EQ(kind_of([&] { total_variation(p, e1); }), ErrorKind::DimensionMismatch);
}

TEST(TotalVariation, IsAMetric) {
    RngStream rng(21);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t n = 2 + i % 6;
        const auto a = uniform_simplex(n, rng);
        const auto b = uniform_simplex(n, rng);
        const auto c = uniform_simplex(n, rng);
        const double ab = total_variation(a.values(), b.values());
        EXPECT_EQ(ab, total_variation(b.values(), a.values()));
        EXPECT_EQ(total_variation(a.values(), a.values()), 0.0);
        EXPECT_GT(ab, 0.0);
        EXPECT_LE(ab, 1.0);
        EXPECT_LE(ab, total_variation(a.values(), c.values()) + total_variation(c.values(), b.values()) + 1e-15);
    }
}

TEST(FrequencyTable, CountsAndMerge) {
    auto a = FrequencyTable::from_counts({1, 2, 3});
    EXPECT_EQ(a.total, 6u);
    auto b = FrequencyTable::from_counts({0, 0, 4});
    a.merge(b);
    EXPECT_EQ(a.total, 10u);
    a.add(0);
    EXPECT_EQ(a.counts[0], 2u);
    EXPECT_EQ(a.total, 11u);
    const auto f = a.frequencies();
    EXPECT_NEAR(f[2], 7.0 / 11, 1e-15);
}

TEST(OlsSlope, ExactLine) {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{1, -1, -3, -5};
    EXPECT_NEAR(ols_slope(x, y), -2.0, 1e-14);
}

}  // namespace
}  // namespace bornforge::stats

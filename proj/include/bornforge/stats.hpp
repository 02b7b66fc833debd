#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bornforge::stats {

/// Per-outcome tallies.
struct FrequencyTable {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    explicit FrequencyTable(std::size_t n = 0) : counts(n, 0) {}
    static FrequencyTable from_counts(std::vector<std::uint64_t> counts);

    void add(std::size_t outcome, std::uint64_t times = 1) {
        counts[outcome] += times;
        total += times;
    }
    void merge(const FrequencyTable& other);
    std::vector<double> frequencies() const;
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Two-sided standard normal quantile for `confidence`, e.g. 1.959964 for 0.95.
double normal_quantile_two_sided(double confidence);
double normal_cdf(double z);

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t total, double confidence = 0.95);

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// Upper tail of the chi-square law by the Wilson-Hilferty cube-root normal approximation.
double chi_square_upper_tail(double statistic, std::size_t dof);

/// Pearson goodness of fit against strictly positive expected counts.
ChiSquareResult chi_square(std::span<const double> observed, std::span<const double> expected);

/// Kolmogorov-Smirnov distance between the empirical law of sorted `samples` and `cdf`.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Large-sample one-sample KS critical value at significance `alpha`,
/// c(alpha) / (sqrt(m) + 0.12 + 0.11 / sqrt(m)).
double ks_critical_value(std::size_t m, double alpha);

/// (1/2) sum |p_i - q_i|.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Ordinary least-squares slope of y on x.
double ols_slope(std::span<const double> x, std::span<const double> y);

}  // namespace bornforge::stats

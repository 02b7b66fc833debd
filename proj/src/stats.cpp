#include "bornforge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bornforge/error.hpp"

namespace bornforge::stats {

FrequencyTable FrequencyTable::from_counts(std::vector<std::uint64_t> counts) {
    FrequencyTable t;
    t.total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    t.counts = std::move(counts);
    return t;
}

void FrequencyTable::merge(const FrequencyTable& other) {
    if (other.counts.size() != counts.size()) throw Error(ErrorKind::DimensionMismatch, "FrequencyTable::merge");
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    total += other.total;
}

std::vector<double> FrequencyTable::frequencies() const {
    std::vector<double> f(counts.size(), 0.0);
    if (total == 0) return f;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        f[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    }
    return f;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile_two_sided(double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "confidence must lie in (0, 1)");
    }
    // Solve Phi(z) = (1 + confidence) / 2 by bisection; Phi is monotone.
    const double target = 0.5 * (1.0 + confidence);
    double lo = 0.0;
    double hi = 40.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t total, double confidence) {
    if (total == 0 || successes > total) {
        throw Error(ErrorKind::InvalidCount,
                    std::to_string(successes) + " successes out of " + std::to_string(total));
    }
    const double z = normal_quantile_two_sided(confidence);
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    Interval iv{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (successes == 0) iv.low = 0.0;
    if (successes == total) iv.high = 1.0;
    iv.low = std::min(iv.low, p);
    iv.high = std::max(iv.high, p);
    return iv;
}

double chi_square_upper_tail(double statistic, std::size_t dof) {
    if (dof == 0) throw Error(ErrorKind::InvalidArgument, "chi-square needs at least one degree of freedom");
    if (statistic <= 0.0) return 1.0;
    const double k = static_cast<double>(dof);
    const double s = 2.0 / (9.0 * k);
    const double z = (std::cbrt(statistic / k) - (1.0 - s)) / std::sqrt(s);
    return std::clamp(0.5 * std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
}

ChiSquareResult chi_square(std::span<const double> observed, std::span<const double> expected) {
    if (observed.size() != expected.size()) {
        throw Error(ErrorKind::DimensionMismatch, "observed and expected differ in length");
    }
    if (observed.size() < 2) throw Error(ErrorKind::InvalidArgument, "chi-square needs at least two bins");
    ChiSquareResult r;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0)) throw Error(ErrorKind::ZeroExpected, "bin " + std::to_string(i));
        const double d = observed[i] - expected[i];
        r.statistic += d * d / expected[i];
    }
    r.dof = observed.size() - 1;
    r.p_value = chi_square_upper_tail(r.statistic, r.dof);
    return r;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw Error(ErrorKind::EmptySample, "KS statistic of an empty sample");
    if (!std::is_sorted(samples.begin(), samples.end())) {
        throw Error(ErrorKind::InvalidArgument, "KS samples must be sorted ascending");
    }
    const double m = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        const double above = static_cast<double>(i + 1) / m - f;
        const double below = f - static_cast<double>(i) / m;
        d = std::max({d, above, below});
    }
    return std::clamp(d, 0.0, 1.0);
}

double ks_critical_value(std::size_t m, double alpha) {
    if (m == 0) throw Error(ErrorKind::EmptySample, "KS critical value for zero samples");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    const double rm = std::sqrt(static_cast<double>(m));
    return c / (rm + 0.12 + 0.11 / rm);
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw Error(ErrorKind::DimensionMismatch, "total_variation");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "ols_slope");
    if (x.size() < 2) throw Error(ErrorKind::InsufficientSamples, "slope needs two points");
    const double m = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw Error(ErrorKind::InvalidArgument, "slope undefined for constant x");
    return sxy / sxx;
}

}  // namespace bornforge::stats

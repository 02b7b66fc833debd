#include "bornforge/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "bornforge/error.hpp"
#include "bornforge/observer.hpp"
#include "bornforge/parallel.hpp"
#include "bornforge/sampling.hpp"
#include "bornforge/stats.hpp"

namespace bornforge {

namespace {

void require_outcome(std::size_t k, std::size_t n) {
    if (k >= n) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "outcome " + std::to_string(k) + " for dimension " + std::to_string(n));
    }
}

// Gram determinant of the edge vectors v_j - v_0, j = 1..n-1.
double gram_determinant(const Eigen::MatrixXd& vertices) {
    const Eigen::Index n = vertices.rows();
    Eigen::MatrixXd edges(n - 1, vertices.cols());
    for (Eigen::Index j = 1; j < n; ++j) edges.row(j - 1) = vertices.row(j) - vertices.row(0);
    const Eigen::MatrixXd gram = edges * edges.transpose();
    return gram.partialPivLu().determinant();
}

VolumeEstimate make_estimate(std::uint64_t hits, std::uint64_t samples) {
    VolumeEstimate e;
    e.samples = samples;
    e.value = static_cast<double>(hits) / static_cast<double>(samples);
    e.standard_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(samples));
    return e;
}

void require_samples(std::uint64_t samples) {
    if (samples == 0) throw Error(ErrorKind::InsufficientSamples, "need at least one sample");
}

}  // namespace

double eigenset_measure_analytic(const MixtureState& system, std::size_t k) {
    require_outcome(k, system.size());
    return system[k];
}

double simplex_volume_ratio(const MixtureState& apex, std::size_t k, std::size_t n) {
    if (apex.size() != n) throw Error(ErrorKind::DimensionMismatch, "apex dimension differs from n");
    require_outcome(k, n);
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd standard = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::MatrixXd replaced = standard;
    for (Eigen::Index j = 0; j < dim; ++j) replaced(static_cast<Eigen::Index>(k), j) = apex[static_cast<std::size_t>(j)];

    const double det_standard = gram_determinant(standard);
    const double det_replaced = std::max(0.0, gram_determinant(replaced));
    if (det_replaced / det_standard < 1e-12) {
        throw Error(ErrorKind::DegenerateSimplex, "apex lies (numerically) on the opposite face");
    }
    return std::sqrt(det_replaced / det_standard);
}

VolumeEstimate eigenset_measure_mc(const MixtureState& system, std::size_t k, std::uint64_t samples,
                                   std::uint64_t seed, std::size_t threads) {
    require_outcome(k, system.size());
    require_samples(samples);
    const std::size_t n = system.size();
    const auto hits = run_batches<std::uint64_t>(
        samples,
        [&](const BatchRange& range) {
            RngStream rng(seed, range.index + 1);
            std::vector<double> observer(n);
            std::uint64_t h = 0;
            for (std::uint64_t i = range.begin; i < range.end; ++i) {
                uniform_simplex_into(observer, rng);
                h += decide_index(system.values(), observer) == k;
            }
            return h;
        },
        threads);
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    return make_estimate(total, samples);
}

VolumeEstimate eigenset_measure_mc(const PureState& system, const Frame& frame, std::size_t k,
                                   std::uint64_t samples, std::uint64_t seed, std::size_t threads) {
    const std::size_t n = system.size();
    require_outcome(k, n);
    require_samples(samples);
    const auto coeffs = coefficients_in_frame(system, frame);
    std::vector<double> system_moduli(n);
    for (std::size_t i = 0; i < n; ++i) system_moduli[i] = std::abs(coeffs[i]);

    const auto hits = run_batches<std::uint64_t>(
        samples,
        [&](const BatchRange& range) {
            RngStream rng(seed, range.index + 1);
            std::vector<Complex> observer(n);
            std::vector<Complex> r(n);
            std::vector<double> moduli(n);
            std::uint64_t h = 0;
            for (std::uint64_t i = range.begin; i < range.end; ++i) {
                uniform_complex_sphere_into(observer, rng);
                coefficients_in_frame_into(observer, frame, r);
                for (std::size_t j = 0; j < n; ++j) moduli[j] = std::abs(r[j]);
                h += decide_index(system_moduli, moduli) == k;
            }
            return h;
        },
        threads);
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    return make_estimate(total, samples);
}

VolumeEstimate eigenset_measure_mc(const PureState& system, std::size_t k, std::uint64_t samples,
                                   std::uint64_t seed, std::size_t threads) {
    return eigenset_measure_mc(system, Frame::computational(system.size()), k, samples, seed, threads);
}

// ---------------------------------------------------------------------------

std::vector<double> eigen_simplex_coordinates(const MixtureState& system, std::size_t k,
                                              std::span<const double> point) {
    const std::size_t n = system.size();
    require_outcome(k, n);
    if (point.size() != n) throw Error(ErrorKind::DimensionMismatch, "point dimension");
    if (system[k] <= 0.0) throw Error(ErrorKind::DegenerateSimplex, "system has no weight on outcome k");
    // point = mu_k t + sum_{i != k} mu_i e_i
    std::vector<double> mu(n);
    mu[k] = point[k] / system[k];
    for (std::size_t i = 0; i < n; ++i) {
        if (i != k) mu[i] = point[i] - mu[k] * system[i];
    }
    return mu;
}

bool in_closed_eigen_simplex(const MixtureState& system, std::size_t k, std::span<const double> point,
                             double tolerance) {
    const auto mu = eigen_simplex_coordinates(system, k, point);
    return std::all_of(mu.begin(), mu.end(), [&](double m) { return m >= -tolerance; });
}

double beta1_cdf(double x, double b) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return 1.0 - std::pow(1.0 - x, b);
}

std::size_t equal_measure_cell(std::span<const double> point, std::size_t bins) {
    const std::size_t n = point.size();
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 2");
    if (bins == 0) throw Error(ErrorKind::InvalidArgument, "need at least one bin");
    const std::size_t dims = n - 1;

    // Stick-breaking: given earlier coordinates, x_i / remaining ~ Beta(1, n-1-i).
    std::vector<double> u(dims);
    double remaining = 1.0;
    for (std::size_t i = 0; i < dims; ++i) {
        const double v = remaining > 0.0 ? std::clamp(point[i] / remaining, 0.0, 1.0) : 0.0;
        u[i] = beta1_cdf(v, static_cast<double>(n - 1 - i));
        remaining -= point[i];
    }

    std::vector<double> lo(dims, 0.0);
    std::vector<double> hi(dims, 1.0);
    std::size_t offset = 0;
    std::size_t cells = bins;
    std::size_t axis = 0;
    while (cells > 1) {
        const std::size_t left = cells / 2;
        const double split = lo[axis] + (hi[axis] - lo[axis]) * static_cast<double>(left) / static_cast<double>(cells);
        if (u[axis] < split) {
            hi[axis] = split;
            cells = left;
        } else {
            lo[axis] = split;
            offset += left;
            cells -= left;
        }
        axis = (axis + 1) % dims;
    }
    return offset;
}

bool UniformityReport::ks_pass() const {
    return std::all_of(ks_marginals.begin(), ks_marginals.end(), [&](double d) { return d < ks_critical; });
}

UniformityReport verify_omega_pushforward(std::size_t n, std::uint64_t samples, std::size_t bins,
                                          std::uint64_t seed, std::size_t threads) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 2");
    if (bins < 2) throw Error(ErrorKind::InvalidArgument, "need at least two bins");
    if (samples < 10 * static_cast<std::uint64_t>(bins)) {
        throw Error(ErrorKind::InsufficientSamples, std::to_string(samples) + " samples for " +
                                                        std::to_string(bins) + " bins; need at least 10 per bin");
    }

    struct Batch {
        std::vector<std::uint64_t> cell_counts;
        std::vector<double> points;  // row-major, n per sample
    };
    const auto batches = run_batches<Batch>(
        samples,
        [&](const BatchRange& range) {
            RngStream rng(seed, range.index + 1);
            Batch b;
            b.cell_counts.assign(bins, 0);
            b.points.reserve((range.end - range.begin) * n);
            std::vector<Complex> z(n);
            for (std::uint64_t i = range.begin; i < range.end; ++i) {
                uniform_complex_sphere_into(z, rng);
                const auto x = omega(z);
                ++b.cell_counts[equal_measure_cell(x, bins)];
                b.points.insert(b.points.end(), x.begin(), x.end());
            }
            return b;
        },
        threads);

    std::vector<double> observed(bins, 0.0);
    std::vector<std::vector<double>> marginals(n);
    for (auto& m : marginals) m.reserve(samples);
    for (const auto& b : batches) {
        for (std::size_t c = 0; c < bins; ++c) observed[c] += static_cast<double>(b.cell_counts[c]);
        for (std::size_t i = 0; i < b.points.size(); ++i) marginals[i % n].push_back(b.points[i]);
    }

    UniformityReport report;
    report.n = n;
    report.samples = samples;
    report.bins = bins;
    const std::vector<double> expected(bins, static_cast<double>(samples) / static_cast<double>(bins));
    const auto chi = stats::chi_square(observed, expected);
    report.chi_square = chi.statistic;
    report.dof = chi.dof;
    report.p_value = chi.p_value;

    const double shape = static_cast<double>(n - 1);
    for (auto& m : marginals) {
        std::sort(m.begin(), m.end());
        report.ks_marginals.push_back(stats::ks_statistic(m, [&](double x) { return beta1_cdf(x, shape); }));
    }
    report.ks_critical = stats::ks_critical_value(samples, 1e-3);
    return report;
}

// ---------------------------------------------------------------------------

ScalingReport det_scaling_check(const MixtureState& system, std::size_t k, std::span<const double> scale,
                                std::uint64_t samples, std::uint64_t seed) {
    const std::size_t n = system.size();
    require_outcome(k, n);
    require_samples(samples);
    if (scale.size() != n) throw Error(ErrorKind::DimensionMismatch, "scale map dimension");
    double det = 1.0;
    double box = 1.0;
    for (double d : scale) {
        if (!std::isfinite(d) || d < 0.0) throw Error(ErrorKind::InvalidArgument, "scale entries must be positive");
        if (d < 1e-300) throw Error(ErrorKind::SingularMap, "scale map is singular");
        det *= d;
        box = std::max(box, d);
    }
    const double box_volume = std::pow(box, static_cast<double>(n));

    // Both sets are hit-counted in the shared box [0, box]^n on the same draws,
    // so the identity map reproduces the original count exactly and the
    // independent-stream error below is conservative.
    auto count_hits = [&](std::uint64_t stream, bool image) {
        RngStream rng(seed, stream);
        std::vector<double> y(n);
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < samples; ++s) {
            bool inside = true;
            for (std::size_t i = 0; i < n; ++i) {
                y[i] = box * rng.uniform();
                if (image) y[i] /= scale[i];  // pull back through the diagonal map
                inside = inside && y[i] <= 1.0;
            }
            if (!inside) continue;
            bool any = false;
            for (double v : y) any = any || v > 0.0;
            if (any && decide_index(system.values(), y) == k) ++hits;
        }
        return hits;
    };
    const std::uint64_t hits_original = count_hits(1, false);
    const std::uint64_t hits_image = count_hits(1, true);

    ScalingReport r;
    const double m = static_cast<double>(samples);
    const double p_orig = static_cast<double>(hits_original) / m;
    const double p_image = static_cast<double>(hits_image) / m;
    r.measure_original = box_volume * p_orig;
    r.measure_image = box_volume * p_image;
    r.determinant = det;
    if (hits_original == 0 || hits_image == 0) {
        throw Error(ErrorKind::InsufficientSamples, "no hits; increase samples");
    }
    r.ratio = p_image / p_orig;
    r.ratio_stderr = r.ratio * std::sqrt((1.0 - p_orig) / (m * p_orig) + (1.0 - p_image) / (m * p_image));
    r.consistent = std::abs(r.ratio - std::abs(det)) <= 3.0 * r.ratio_stderr;
    return r;
}

}  // namespace bornforge

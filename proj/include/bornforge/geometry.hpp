#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bornforge/state_space.hpp"

namespace bornforge {

/// Hit-count estimate of a normalized measure.
struct VolumeEstimate {
    double value = 0.0;
    double standard_error = 0.0;  // sqrt(value (1 - value) / samples)
    std::uint64_t samples = 0;
};

/// Normalized measure of the closed eigen-simplex for outcome k, which is t_k.
double eigenset_measure_analytic(const MixtureState& system, std::size_t k);

/// vol([e_1, .., e_{k-1}, a, e_{k+1}, .., e_n]) / vol(standard simplex),
/// computed from Gram determinants of the edge vectors. Independent of the
/// closed form above; both must agree.
double simplex_volume_ratio(const MixtureState& apex, std::size_t k, std::size_t n);

/// Fraction of uniformly drawn observer states that decide outcome k.
VolumeEstimate eigenset_measure_mc(const MixtureState& system, std::size_t k, std::uint64_t samples,
                                   std::uint64_t seed, std::size_t threads = 0);
/// Complex model; observers uniform on the sphere, decisions on coefficients in `frame`.
VolumeEstimate eigenset_measure_mc(const PureState& system, std::size_t k, std::uint64_t samples,
                                   std::uint64_t seed, std::size_t threads = 0);
VolumeEstimate eigenset_measure_mc(const PureState& system, const Frame& frame, std::size_t k,
                                   std::uint64_t samples, std::uint64_t seed, std::size_t threads = 0);

/// Barycentric coordinates of `point` with respect to the vertex list of
/// [C_k]: outcome vertices with vertex k replaced by the system state.
/// Coordinates sum to one; the point is inside iff all are >= 0.
std::vector<double> eigen_simplex_coordinates(const MixtureState& system, std::size_t k,
                                              std::span<const double> point);
bool in_closed_eigen_simplex(const MixtureState& system, std::size_t k, std::span<const double> point,
                             double tolerance = 1e-9);

/// Maps a simplex point to one of `bins` cells of equal flat-Dirichlet
/// measure. Stick-breaking sends the flat law to independent uniforms, whose
/// unit cube is then split by recursive bisection along cycling axes.
std::size_t equal_measure_cell(std::span<const double> point, std::size_t bins);

/// CDF of Beta(1, b): 1 - (1 - x)^b.
double beta1_cdf(double x, double b);

struct UniformityReport {
    std::size_t n = 0;
    std::uint64_t samples = 0;
    std::size_t bins = 0;
    double chi_square = 0.0;
    std::size_t dof = 0;
    double p_value = 0.0;
    std::vector<double> ks_marginals;
    double ks_critical = 0.0;  // at significance 0.001

    bool ks_pass() const;
    bool passed(double significance = 1e-3) const { return p_value > significance; }
};

/// Draws uniform sphere states, maps them through omega, and tests the image
/// for the flat simplex law (chi-square over equal-measure cells, KS on each
/// coordinate against Beta(1, n-1)).
UniformityReport verify_omega_pushforward(std::size_t n, std::uint64_t samples, std::size_t bins,
                                          std::uint64_t seed, std::size_t threads = 0);

struct ScalingReport {
    double measure_original = 0.0;
    double measure_image = 0.0;
    double determinant = 0.0;
    double ratio = 0.0;
    double ratio_stderr = 0.0;
    bool consistent = false;  // |ratio - |det|| <= 3 ratio_stderr
};

/// Lebesgue measure of the eigenset cone {r in [0,1]^n : decide(t, r) = k}
/// and of its image under diag(scale), both by hit counting in one shared
/// bounding box, compared against |det| scaling.
ScalingReport det_scaling_check(const MixtureState& system, std::size_t k, std::span<const double> scale,
                                std::uint64_t samples, std::uint64_t seed);

}  // namespace bornforge

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "bornforge/geometry.hpp"
#include "bornforge/observer.hpp"
#include "bornforge/sampling.hpp"
#include "test_util.hpp"

namespace bornforge {
namespace {

using testing_util::kind_of;
using testing_util::mixture;
using testing_util::pure;

/// Area of a triangle in R^3 from the cross product, relative to the
/// standard 2-simplex (area sqrt(3)/2).
double triangle_ratio(std::array<std::array<double, 3>, 3> v) {
    std::array<double, 3> a{};
    std::array<double, 3> b{};
    for (int i = 0; i < 3; ++i) {
        a[i] = v[1][i] - v[0][i];
        b[i] = v[2][i] - v[0][i];
    }
    const double cx = a[1] * b[2] - a[2] * b[1];
    const double cy = a[2] * b[0] - a[0] * b[2];
    const double cz = a[0] * b[1] - a[1] * b[0];
    return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz) / (std::sqrt(3.0) / 2);
}

TEST(EigensetMeasureAnalytic, Examples) {
    const auto t = mixture({0.5, 0.3, 0.2});
    EXPECT_EQ(eigenset_measure_analytic(t, 0), 0.5);
    EXPECT_EQ(eigenset_measure_analytic(mixture({0.0, 0.6, 0.4}), 0), 0.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < 3; ++k) sum += eigenset_measure_analytic(t, k);
    EXPECT_NEAR(sum, 1.0, 1e-15);
    EXPECT_EQ(kind_of([&] { eigenset_measure_analytic(t, 3); }), ErrorKind::IndexOutOfRange);
}

TEST(SimplexVolumeRatio, Examples) {
    EXPECT_NEAR(simplex_volume_ratio(MixtureState::vertex(4, 2), 2, 4), 1.0, 1e-12);
    for (std::size_t n = 2; n <= 8; ++n) {
        EXPECT_NEAR(simplex_volume_ratio(MixtureState::barycenter(n), 0, n), 1.0 / n, 1e-12);
    }
    EXPECT_NEAR(simplex_volume_ratio(mixture({0.5, 0.3, 0.2}), 1, 3), 0.3, 1e-12);
}

TEST(SimplexVolumeRatio, MatchesCrossProductArea) {
    RngStream rng(31);
    for (int i = 0; i < 500; ++i) {
        const auto a = uniform_simplex(3, rng);
        const std::size_t k = i % 3;
        std::array<std::array<double, 3>, 3> v{};
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t c = 0; c < 3; ++c) v[j][c] = j == k ? a[c] : (c == j ? 1.0 : 0.0);
        }
        EXPECT_NEAR(simplex_volume_ratio(a, k, 3), triangle_ratio(v), 1e-12);
    }
}

TEST(SimplexVolumeRatio, AgreesWithAnalyticMeasure) {
    RngStream rng(32);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 2 + i % 7;
        const auto t = uniform_simplex(n, rng);
        const std::size_t k = (i / 7) % n;
        if (t[k] < 1e-6) continue;  // too thin for the determinant route
        EXPECT_NEAR(simplex_volume_ratio(t, k, n), eigenset_measure_analytic(t, k), 1e-10);
    }
}

TEST(SimplexVolumeRatio, DegenerateApex) {
    EXPECT_EQ(kind_of([] { simplex_volume_ratio(mixture({0.0, 0.5, 0.5}), 0, 3); }), ErrorKind::DegenerateSimplex);
}

TEST(EigensetMeasureMc, VertexSystemAlwaysWins) {
    const auto v = eigenset_measure_mc(MixtureState::vertex(3, 1), 1, 20000, 1);
    EXPECT_EQ(v.value, 1.0);
    EXPECT_EQ(v.standard_error, 0.0);
    const auto b = eigenset_measure_mc(PureState::basis(3, 2), 2, 20000, 1);
    EXPECT_EQ(b.value, 1.0);
}

TEST(EigensetMeasureMc, RealModelMatchesSystemCoordinate) {
    const auto v = eigenset_measure_mc(mixture({0.5, 0.3, 0.2}), 0, 1000000, 2);
    EXPECT_EQ(v.samples, 1000000u);
    EXPECT_NEAR(v.standard_error, std::sqrt(v.value * (1 - v.value) / 1e6), 1e-15);
    EXPECT_LE(std::abs(v.value - 0.5), 3 * v.standard_error);
}

TEST(EigensetMeasureMc, ComplexModelMatchesBorn) {
    const auto v = eigenset_measure_mc(pure({std::sqrt(0.7), Complex(0, std::sqrt(0.3))}), 0, 1000000, 3);
    EXPECT_LE(std::abs(v.value - 0.7), 3 * v.standard_error);
}

TEST(EigensetMeasureMc, ComplexModelInRotatedFrame) {
    RngStream rng(33);
    const auto frame = Frame::from_unitary(haar_unitary(3, rng));
    const auto q = uniform_complex_sphere(3, rng);
    const auto p = born_probabilities(q, frame);
    for (std::size_t k = 0; k < 3; ++k) {
        const auto v = eigenset_measure_mc(q, frame, k, 400000, 40 + k);
        const double sigma = std::sqrt(p[k] * (1 - p[k]) / 4e5);
        EXPECT_LE(std::abs(v.value - p[k]), 4 * sigma);
    }
}

TEST(EigenSimplexCoordinates, BarycentricObserverRoundTrips) {
    const auto t = mixture({0.5, 0.3, 0.2});
    const std::vector<double> lambda{0.2, 0.5, 0.3};
    const auto r = barycentric_observer(1, t, lambda);
    const auto mu = eigen_simplex_coordinates(t, 1, r.values());
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(mu[i], lambda[i], 1e-12);
    EXPECT_TRUE(in_closed_eigen_simplex(t, 1, r.values()));
    EXPECT_FALSE(in_closed_eigen_simplex(t, 0, r.values()));
}

TEST(EqualMeasureCell, CellsHaveEqualCounts) {
    RngStream rng(34);
    for (std::size_t n : {2u, 3u, 5u}) {
        for (std::size_t bins : {7u, 50u}) {
            std::vector<double> counts(bins, 0.0);
            const std::size_t m = 100000;
            for (std::size_t i = 0; i < m; ++i) counts[equal_measure_cell(uniform_simplex(n, rng).values(), bins)] += 1;
            const std::vector<double> expected(bins, static_cast<double>(m) / bins);
            EXPECT_GT(stats::chi_square(counts, expected).p_value, 1e-3) << "n=" << n << " bins=" << bins;
        }
    }
}

TEST(Beta1Cdf, Values) {
    EXPECT_EQ(beta1_cdf(0.0, 3), 0.0);
    EXPECT_EQ(beta1_cdf(1.0, 3), 1.0);
    EXPECT_NEAR(beta1_cdf(0.5, 2), 0.75, 1e-15);
}

TEST(OmegaPushforward, PassesForSmallDimensions) {
    for (std::size_t n : {2u, 3u}) {
        const auto r = verify_omega_pushforward(n, 100000, 50, 100 + n);
        EXPECT_EQ(r.dof, 49u);
        EXPECT_GT(r.p_value, 1e-3);
        EXPECT_TRUE(r.ks_pass());
        ASSERT_EQ(r.ks_marginals.size(), n);
    }
}

TEST(OmegaPushforward, BinningDetectsRealSphereImage) {
    // Squares of a real unit vector follow Dirichlet(1/2, ..., 1/2), not the
    // flat law; the same cells and test must reject them.
    RngStream rng(35);
    const std::size_t bins = 50;
    const std::size_t m = 100000;
    std::vector<double> counts(bins, 0.0);
    std::vector<double> w(3);
    for (std::size_t i = 0; i < m; ++i) {
        double norm = 0.0;
        for (auto& x : w) {
            x = rng.standard_normal();
            x *= x;
            norm += x;
        }
        for (auto& x : w) x /= norm;
        counts[equal_measure_cell(w, bins)] += 1;
    }
    const std::vector<double> expected(bins, static_cast<double>(m) / bins);
    EXPECT_LT(stats::chi_square(counts, expected).p_value, 1e-6);
}

TEST(OmegaPushforward, InsufficientSamples) {
    EXPECT_EQ(kind_of([] { verify_omega_pushforward(2, 10, 50, 1); }), ErrorKind::InsufficientSamples);
}

TEST(DetScaling, IdentityMap) {
    const std::vector<double> one{1.0, 1.0, 1.0};
    const auto r = det_scaling_check(mixture({0.5, 0.3, 0.2}), 0, one, 200000, 5);
    EXPECT_DOUBLE_EQ(r.determinant, 1.0);
    EXPECT_DOUBLE_EQ(r.ratio, 1.0);
    EXPECT_TRUE(r.consistent);
}

TEST(DetScaling, UniformScaling) {
    const double c = 1.5;
    const std::vector<double> s{c, c, c};
    const auto r = det_scaling_check(mixture({0.5, 0.3, 0.2}), 1, s, 400000, 6);
    EXPECT_DOUBLE_EQ(r.determinant, c * c * c);
    EXPECT_LE(std::abs(r.ratio - c * c * c), 3 * r.ratio_stderr);
}

TEST(DetScaling, UnitDeterminantPreservesMeasure) {
    const std::vector<double> s{2.0, 0.5, 1.0};
    const auto r = det_scaling_check(mixture({0.4, 0.35, 0.25}), 2, s, 400000, 7);
    EXPECT_DOUBLE_EQ(r.determinant, 1.0);
    EXPECT_LE(std::abs(r.measure_image - r.measure_original),
              3 * r.ratio_stderr * std::max(r.measure_original, 1e-12));
    EXPECT_TRUE(r.consistent);
}

TEST(DetScaling, SingularMap) {
    const std::vector<double> s{1.0, 0.0, 1.0};
    EXPECT_EQ(kind_of([&] { det_scaling_check(mixture({0.5, 0.3, 0.2}), 0, s, 1000, 1); }), ErrorKind::SingularMap);
}

}  // namespace
}  // namespace bornforge

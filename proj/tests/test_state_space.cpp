#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bornforge/error.hpp"
#include "bornforge/sampling.hpp"
#include "bornforge/state_space.hpp"
#include "test_util.hpp"

namespace bornforge {
namespace {

using testing_util::mixture;
using testing_util::pure;
using testing_util::kind_of;

TEST(OutcomeSet, IndexedLabels) {
    const auto s = OutcomeSet::indexed(3);
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s.label(0), "x1");
    EXPECT_EQ(s.label(2), "x3");
}

TEST(OutcomeSet, RejectsDuplicatesAndSingletons) {
    EXPECT_EQ(kind_of([] { OutcomeSet({"a", "a"}); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { OutcomeSet({"a"}); }), ErrorKind::InvalidArgument);
}

TEST(MixtureState, AcceptsNormalizedVector) {
    const auto s = mixture({0.5, 0.3, 0.2});
    EXPECT_EQ(s.size(), 3u);
    EXPECT_DOUBLE_EQ(s[0], 0.5);
}

TEST(MixtureState, AcceptsVertex) {
    const auto s = mixture({1, 0, 0});
    EXPECT_EQ(s, MixtureState::vertex(3, 0));
}

TEST(MixtureState, RejectsSumAboveTolerance) {
    EXPECT_EQ(kind_of([] { mixture({0.5, 0.6}); }), ErrorKind::NotNormalized);
}

TEST(MixtureState, RejectsNegativeComponent) {
    EXPECT_EQ(kind_of([] { mixture({1.1, -0.1}); }), ErrorKind::NegativeComponent);
}

TEST(MixtureState, RejectsSingleOutcome) {
    EXPECT_EQ(kind_of([] { mixture({1.0}); }), ErrorKind::InvalidArgument);
}

TEST(MixtureState, RenormalizesInsideBand) {
    const auto s = mixture({0.5 + 2e-10, 0.5});
    double sum = 0.0;
    for (double x : s.values()) sum += x;
    EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(MixtureState, ClampsTinyNegatives) {
    const auto s = mixture({1.0 + 5e-10, -5e-10});
    EXPECT_GE(s[1], 0.0);
}

TEST(PureState, AcceptsBasisVector) {
    const auto q = pure({1.0, 0.0});
    EXPECT_EQ(q.amplitudes()[0], Complex(1.0, 0.0));
}

TEST(PureState, AcceptsUnitVectorWithPhase) {
    const double h = 1.0 / std::sqrt(2.0);
    const auto q = pure({h, Complex(0, h)});
    EXPECT_NEAR(std::norm(q.amplitudes()[1]), 0.5, 1e-15);
}

TEST(PureState, RejectsZeroVector) {
    EXPECT_EQ(kind_of([] { pure({0.0, 0.0, 0.0}); }), ErrorKind::ZeroVector);
}

TEST(PureState, StrictModeRejectsUnnormalized) {
    const std::vector<Complex> v{1.0, 1.0};
    EXPECT_EQ(kind_of([&] { PureState::validate(v, NormMode::Strict); }), ErrorKind::NotNormalized);
    const auto q = PureState::validate(v);  // renormalized by default
    EXPECT_NEAR(std::abs(q.amplitudes()[0]), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Omega, VertexMapsToVertex) {
    EXPECT_EQ(omega(PureState::basis(2, 0)), MixtureState::vertex(2, 0));
}

TEST(Omega, PhaseCancels) {
    const double h = 1.0 / std::sqrt(2.0);
    for (double theta : {0.0, 0.3, 1.7, 3.1, 5.9}) {
        const auto w = omega(pure({h, std::polar(h, theta)}));
        EXPECT_NEAR(w[0], 0.5, 1e-15);
        EXPECT_NEAR(w[1], 0.5, 1e-15);
    }
}

TEST(Omega, SqrtAmplitudes) {
    const auto w = omega(pure({std::sqrt(0.7), Complex(0, std::sqrt(0.3))}));
    EXPECT_NEAR(w[0], 0.7, 1e-15);
    EXPECT_NEAR(w[1], 0.3, 1e-15);
}

TEST(Omega, ConservesMassOnRandomStates) {
    RngStream rng(11);
    for (int i = 0; i < 2000; ++i) {
        const auto q = uniform_complex_sphere(2 + i % 15, rng);
        const auto raw = omega(q.amplitudes());
        double sum = 0.0;
        for (double x : raw) sum += x;
        EXPECT_NEAR(sum, 1.0, 10 * kNormTolerance);
    }
}

TEST(Omega, DiagonalPhasesLeaveImageUnchanged) {
    RngStream rng(12);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 2 + i % 7;
        const auto q = uniform_complex_sphere(n, rng);
        std::vector<double> phases(n);
        for (auto& p : phases) p = 2 * std::numbers::pi * rng.uniform();
        const auto moved = apply_unitary(UnitaryMap::diagonal_phases(phases), q);
        const auto a = omega(q);
        const auto b = omega(moved);
        for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(a[k], b[k], 1e-15);
    }
}

TEST(BornProbabilities, FrameVectorGivesIndicator) {
    RngStream rng(13);
    const auto frame = Frame::from_unitary(haar_unitary(4, rng));
    const auto b2 = pure(std::vector<Complex>(frame.vector(2).begin(), frame.vector(2).end()));
    const auto p = born_probabilities(b2, frame);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(p[k], k == 2 ? 1.0 : 0.0, 1e-12);
}

TEST(BornProbabilities, ComputationalFrame) {
    const auto p = born_probabilities(pure({std::sqrt(0.7), Complex(0, std::sqrt(0.3))}), Frame::computational(2));
    EXPECT_NEAR(p[0], 0.7, 1e-15);
    EXPECT_NEAR(p[1], 0.3, 1e-15);
}

TEST(BornProbabilities, InvariantUnderJointUnitary) {
    RngStream rng(14);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + i % 5;
        const auto frame = Frame::from_unitary(haar_unitary(n, rng));
        const auto q = uniform_complex_sphere(n, rng);
        const auto u = haar_unitary(n, rng);
        const auto a = born_probabilities(q, frame);
        const auto b = born_probabilities(apply_unitary(u, q), transform_frame(u, frame));
        for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(a[k], b[k], 1e-12);
    }
}

TEST(BornProbabilities, DimensionMismatch) {
    EXPECT_EQ(kind_of([] { born_probabilities(PureState::basis(2, 0), Frame::computational(3)); }),
              ErrorKind::DimensionMismatch);
}

TEST(CoefficientsInFrame, ComputationalIsIdentity) {
    const auto q = pure({Complex(0.6, 0.0), Complex(0.0, 0.8)});
    const auto c = coefficients_in_frame(q, Frame::computational(2));
    EXPECT_EQ(c[0], q.amplitudes()[0]);
    EXPECT_EQ(c[1], q.amplitudes()[1]);
}

TEST(CoefficientsInFrame, BasisVectorGivesUnitCoordinate) {
    const auto c = coefficients_in_frame(PureState::basis(4, 1), Frame::computational(4));
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(c[k], Complex(k == 1 ? 1.0 : 0.0, 0.0));
}

TEST(CoefficientsInFrame, RandomFrameKeepsNormAndRoundTrips) {
    RngStream rng(15);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 2 + i % 9;
        const auto frame = Frame::from_unitary(haar_unitary(n, rng));
        const auto q = uniform_complex_sphere(n, rng);
        const auto c = coefficients_in_frame(q, frame);
        double sum = 0.0;
        for (const auto& z : c) sum += std::norm(z);
        EXPECT_NEAR(sum, 1.0, 1e-12);
        const auto back = reconstruct(c, frame);
        for (std::size_t k = 0; k < n; ++k) EXPECT_LT(std::abs(back[k] - q.amplitudes()[k]), kReconTolerance);
    }
}

TEST(CoefficientsInFrame, DimensionMismatch) {
    EXPECT_EQ(kind_of([] { coefficients_in_frame(PureState::basis(3, 0), Frame::computational(2)); }),
              ErrorKind::DimensionMismatch);
}

TEST(ApplyUnitary, IdentityKeepsState) {
    const auto q = pure({Complex(0.6, 0.0), Complex(0.0, 0.8)});
    const auto r = apply_unitary(UnitaryMap::identity(2), q);
    EXPECT_EQ(r.amplitudes()[0], q.amplitudes()[0]);
    EXPECT_EQ(r.amplitudes()[1], q.amplitudes()[1]);
}

TEST(ApplyUnitary, PermutationSwapsComponents) {
    const std::vector<std::size_t> image{1, 0};
    const Complex a(0.6, 0.0);
    const Complex b(0.0, 0.8);
    const auto r = apply_unitary(UnitaryMap::permutation(image), pure({a, b}));
    EXPECT_EQ(r.amplitudes()[0], b);
    EXPECT_EQ(r.amplitudes()[1], a);
}

TEST(ApplyUnitary, DiagonalPhasesKeepOmega) {
    const std::vector<double> phases{0.4, 2.2};
    const auto q = pure({Complex(0.6, 0.0), Complex(0.0, 0.8)});
    const auto a = omega(q);
    const auto b = omega(apply_unitary(UnitaryMap::diagonal_phases(phases), q));
    EXPECT_NEAR(a[0], b[0], 1e-15);
    EXPECT_NEAR(a[1], b[1], 1e-15);
}

TEST(ApplyUnitary, OutputIsNormalized) {
    RngStream rng(16);
    const auto u = haar_unitary(6, rng);
    const auto q = apply_unitary(u, uniform_complex_sphere(6, rng));
    double sum = 0.0;
    for (const auto& z : q.amplitudes()) sum += std::norm(z);
    EXPECT_NEAR(sum, 1.0, kNormTolerance);
}

TEST(UnitaryMap, RejectsNonUnitary) {
    const std::vector<Complex> m{1.0, 1.0, 0.0, 1.0};
    EXPECT_EQ(kind_of([&] { UnitaryMap::from_matrix(m, 2); }), ErrorKind::NotUnitary);
}

TEST(UnitaryMap, DimensionMismatchOnApply) {
    EXPECT_EQ(kind_of([] { apply_unitary(UnitaryMap::identity(3), PureState::basis(2, 0)); }),
              ErrorKind::DimensionMismatch);
}

TEST(Frame, RejectsNonOrthonormal) {
    const std::vector<std::vector<Complex>> basis{{1.0, 0.0}, {1.0, 1.0}};
    EXPECT_EQ(kind_of([&] { Frame::from_vectors(basis); }), ErrorKind::NotOrthonormal);
}

TEST(Frame, FromUnitaryUsesColumns) {
    const std::vector<std::size_t> image{1, 0};
    const auto f = Frame::from_unitary(UnitaryMap::permutation(image));
    EXPECT_EQ(f.vector(0)[1], Complex(1.0, 0.0));
    EXPECT_EQ(f.vector(1)[0], Complex(1.0, 0.0));
}

}  // namespace
}  // namespace bornforge

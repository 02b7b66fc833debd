#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bornforge {

using Complex = std::complex<double>;

/// Normalization band for state validation. Inputs inside the band are
/// renormalized exactly, so downstream code may assume unit sum / unit norm.
inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kOrthTolerance = 1e-9;
inline constexpr double kReconTolerance = 1e-8;

/// Distinct labels x_1..x_n of a measurement's possible outcomes.
class OutcomeSet {
public:
    explicit OutcomeSet(std::vector<std::string> labels);

    /// Labels "x1".."xn".
    static OutcomeSet indexed(std::size_t n);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(std::size_t i) const;
    std::span<const std::string> labels() const noexcept { return labels_; }

private:
    std::vector<std::string> labels_;
};

/// A point of the standard simplex: the outcome probabilities t_1..t_n of a
/// statistical state. Also used as the observer state in the real model.
class MixtureState {
public:
    /// Rejects entries below -kNormTolerance and sums outside 1 +- kNormTolerance;
    /// otherwise clamps tiny negatives to zero and rescales to unit sum.
    static MixtureState validate(std::span<const double> raw);
    static MixtureState vertex(std::size_t n, std::size_t k);
    static MixtureState barycenter(std::size_t n);

    std::size_t size() const noexcept { return t_.size(); }
    double operator[](std::size_t i) const { return t_[i]; }
    std::span<const double> values() const noexcept { return t_; }

    bool operator==(const MixtureState&) const = default;

private:
    friend MixtureState swap_components(const MixtureState&, std::size_t, std::size_t);
    explicit MixtureState(std::vector<double> t) : t_(std::move(t)) {}
    std::vector<double> t_;
};

enum class NormMode {
    Renormalize,  // any nonzero vector is scaled to unit norm
    Strict,       // norm must already be within kNormTolerance of 1
};

/// Unit-norm complex n-vector in the fixed computational basis.
class PureState {
public:
    static PureState validate(std::span<const Complex> raw, NormMode mode = NormMode::Renormalize);
    static PureState basis(std::size_t n, std::size_t k);

    std::size_t size() const noexcept { return q_.size(); }
    Complex operator[](std::size_t i) const { return q_[i]; }
    std::span<const Complex> amplitudes() const noexcept { return q_; }

    bool operator==(const PureState&) const = default;

private:
    friend PureState swap_components(const PureState&, std::size_t, std::size_t);
    explicit PureState(std::vector<Complex> q) : q_(std::move(q)) {}
    std::vector<Complex> q_;
};

/// Square complex matrix with U^dagger U = 1 (entrywise within kOrthTolerance).
class UnitaryMap {
public:
    /// `row_major` holds n*n entries, U(i, j) at index i*n + j.
    static UnitaryMap from_matrix(std::span<const Complex> row_major, std::size_t n);
    static UnitaryMap identity(std::size_t n);
    static UnitaryMap diagonal_phases(std::span<const double> phases);
    static UnitaryMap permutation(std::span<const std::size_t> image);

    std::size_t size() const noexcept { return n_; }
    Complex operator()(std::size_t i, std::size_t j) const { return u_[i * n_ + j]; }
    std::span<const Complex> entries() const noexcept { return u_; }

    /// U v for an arbitrary (not necessarily normalized) vector.
    std::vector<Complex> apply(std::span<const Complex> v) const;

private:
    UnitaryMap(std::vector<Complex> u, std::size_t n) : u_(std::move(u)), n_(n) {}
    std::vector<Complex> u_;
    std::size_t n_;
};

/// Orthonormal basis b_1..b_n of C^n; the eigenvectors of a non-degenerate observable.
class Frame {
public:
    static Frame from_vectors(const std::vector<std::vector<Complex>>& basis);
    static Frame computational(std::size_t n);
    /// Columns of U as basis vectors.
    static Frame from_unitary(const UnitaryMap& u);

    std::size_t size() const noexcept { return n_; }
    std::span<const Complex> vector(std::size_t i) const { return {b_.data() + i * n_, n_}; }

private:
    Frame(std::vector<Complex> b, std::size_t n) : b_(std::move(b)), n_(n) {}
    std::vector<Complex> b_;  // row i is basis vector i
    std::size_t n_;
};

/// Statistical (real simplex) or Hilbert space (complex) formulation.
enum class Model { Real, Complex };

std::string_view to_string(Model model);

using AnyState = std::variant<MixtureState, PureState>;

std::vector<double> omega(std::span<const Complex> z);
/// Entrywise z_k z_k^*; maps the unit sphere onto the simplex.
MixtureState omega(const PureState& q);

/// (<b_i, q>)_i with the inner product antilinear in its first argument.
std::vector<Complex> coefficients_in_frame(std::span<const Complex> q, const Frame& frame);
std::vector<Complex> coefficients_in_frame(const PureState& q, const Frame& frame);
void coefficients_in_frame_into(std::span<const Complex> q, const Frame& frame, std::span<Complex> out);

/// sum_i c_i b_i.
std::vector<Complex> reconstruct(std::span<const Complex> coefficients, const Frame& frame);

/// |<b_k, q>|^2 for every frame vector.
MixtureState born_probabilities(const PureState& q, const Frame& frame);

PureState apply_unitary(const UnitaryMap& u, const PureState& q);

/// The frame (U b_1, ..., U b_n).
Frame transform_frame(const UnitaryMap& u, const Frame& frame);

}  // namespace bornforge

#include "bornforge/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "bornforge/error.hpp"

namespace bornforge {

namespace {

void require_dimension(std::size_t n) {
    if (n < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "dimension must be at least 2, got " + std::to_string(n));
    }
}

void require_same_dimension(std::size_t a, std::size_t b) {
    if (a != b) {
        throw Error(ErrorKind::DimensionMismatch,
                    "dimensions " + std::to_string(a) + " and " + std::to_string(b));
    }
}

double norm_squared(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::NegativeComponent: return "NegativeComponent";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::NotOrthonormal: return "NotOrthonormal";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::KindMismatch: return "KindMismatch";
        case ErrorKind::AllRatiosZero: return "AllRatiosZero";
        case ErrorKind::InvalidBarycentric: return "InvalidBarycentric";
        case ErrorKind::RejectionExhausted: return "RejectionExhausted";
        case ErrorKind::DegenerateSimplex: return "DegenerateSimplex";
        case ErrorKind::InsufficientSamples: return "InsufficientSamples";
        case ErrorKind::SingularMap: return "SingularMap";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::InvalidAlpha: return "InvalidAlpha";
        case ErrorKind::InvalidCount: return "InvalidCount";
        case ErrorKind::ZeroExpected: return "ZeroExpected";
        case ErrorKind::EmptySample: return "EmptySample";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

std::string_view to_string(Model model) {
    return model == Model::Real ? "real" : "complex";
}

OutcomeSet::OutcomeSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    require_dimension(labels_.size());
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) {
        throw Error(ErrorKind::InvalidArgument, "outcome labels must be distinct");
    }
}

OutcomeSet OutcomeSet::indexed(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
    return OutcomeSet(std::move(labels));
}

const std::string& OutcomeSet::label(std::size_t i) const {
    if (i >= labels_.size()) throw Error(ErrorKind::IndexOutOfRange, "outcome " + std::to_string(i));
    return labels_[i];
}

// ---------------------------------------------------------------------------

MixtureState MixtureState::validate(std::span<const double> raw) {
    require_dimension(raw.size());
    std::vector<double> t(raw.begin(), raw.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i])) {
            throw Error(ErrorKind::InvalidArgument, "component " + std::to_string(i) + " is not finite");
        }
        if (t[i] < -kNormTolerance) {
            throw Error(ErrorKind::NegativeComponent,
                        "component " + std::to_string(i) + " = " + std::to_string(t[i]));
        }
        t[i] = std::max(t[i], 0.0);
        sum += t[i];
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::NotNormalized, "components sum to " + std::to_string(sum));
    }
    for (auto& x : t) x /= sum;
    return MixtureState(std::move(t));
}

MixtureState MixtureState::vertex(std::size_t n, std::size_t k) {
    require_dimension(n);
    if (k >= n) throw Error(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(k));
    std::vector<double> t(n, 0.0);
    t[k] = 1.0;
    return MixtureState(std::move(t));
}

MixtureState MixtureState::barycenter(std::size_t n) {
    require_dimension(n);
    return MixtureState(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

// ---------------------------------------------------------------------------

PureState PureState::validate(std::span<const Complex> raw, NormMode mode) {
    require_dimension(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i].real()) || !std::isfinite(raw[i].imag())) {
            throw Error(ErrorKind::InvalidArgument, "amplitude " + std::to_string(i) + " is not finite");
        }
    }
    const double norm = std::sqrt(norm_squared(raw));
    if (norm < kNormTolerance) throw Error(ErrorKind::ZeroVector, "state has zero norm");
    if (mode == NormMode::Strict && std::abs(norm - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::NotNormalized, "state norm is " + std::to_string(norm));
    }
    std::vector<Complex> q(raw.begin(), raw.end());
    for (auto& z : q) z /= norm;
    return PureState(std::move(q));
}

PureState PureState::basis(std::size_t n, std::size_t k) {
    require_dimension(n);
    if (k >= n) throw Error(ErrorKind::IndexOutOfRange, "basis vector " + std::to_string(k));
    std::vector<Complex> q(n, Complex{0.0, 0.0});
    q[k] = 1.0;
    return PureState(std::move(q));
}

// ---------------------------------------------------------------------------

UnitaryMap UnitaryMap::from_matrix(std::span<const Complex> row_major, std::size_t n) {
    require_dimension(n);
    if (row_major.size() != n * n) {
        throw Error(ErrorKind::DimensionMismatch,
                    "expected " + std::to_string(n * n) + " entries, got " + std::to_string(row_major.size()));
    }
    // (U^dagger U)_{ij} = sum_k conj(U_ki) U_kj
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) s += std::conj(row_major[k * n + i]) * row_major[k * n + j];
            const Complex expected = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            if (std::abs(s - expected) > kOrthTolerance) {
                throw Error(ErrorKind::NotUnitary, "U^dagger U deviates from identity at (" +
                                                       std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
    return UnitaryMap(std::vector<Complex>(row_major.begin(), row_major.end()), n);
}

UnitaryMap UnitaryMap::identity(std::size_t n) {
    require_dimension(n);
    std::vector<Complex> u(n * n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) u[i * n + i] = 1.0;
    return UnitaryMap(std::move(u), n);
}

UnitaryMap UnitaryMap::diagonal_phases(std::span<const double> phases) {
    const std::size_t n = phases.size();
    require_dimension(n);
    std::vector<Complex> u(n * n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) u[i * n + i] = std::polar(1.0, phases[i]);
    return UnitaryMap(std::move(u), n);
}

UnitaryMap UnitaryMap::permutation(std::span<const std::size_t> image) {
    const std::size_t n = image.size();
    require_dimension(n);
    std::vector<bool> hit(n, false);
    std::vector<Complex> u(n * n, Complex{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
        if (image[j] >= n || hit[image[j]]) {
            throw Error(ErrorKind::InvalidArgument, "not a permutation");
        }
        hit[image[j]] = true;
        u[image[j] * n + j] = 1.0;  // e_j -> e_image[j]
    }
    return UnitaryMap(std::move(u), n);
}

std::vector<Complex> UnitaryMap::apply(std::span<const Complex> v) const {
    require_same_dimension(n_, v.size());
    std::vector<Complex> out(n_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n_; ++i) {
        Complex s{0.0, 0.0};
        for (std::size_t j = 0; j < n_; ++j) s += u_[i * n_ + j] * v[j];
        out[i] = s;
    }
    return out;
}

// ---------------------------------------------------------------------------

Frame Frame::from_vectors(const std::vector<std::vector<Complex>>& basis) {
    const std::size_t n = basis.size();
    require_dimension(n);
    std::vector<Complex> b;
    b.reserve(n * n);
    for (const auto& v : basis) {
        require_same_dimension(n, v.size());
        b.insert(b.end(), v.begin(), v.end());
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const Complex s = inner({b.data() + i * n, n}, {b.data() + j * n, n});
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(s - expected) > kOrthTolerance) {
                throw Error(ErrorKind::NotOrthonormal, "<b_" + std::to_string(i) + ", b_" +
                                                           std::to_string(j) + "> off by " +
                                                           std::to_string(std::abs(s - expected)));
            }
        }
    }
    return Frame(std::move(b), n);
}

Frame Frame::computational(std::size_t n) {
    require_dimension(n);
    std::vector<Complex> b(n * n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) b[i * n + i] = 1.0;
    return Frame(std::move(b), n);
}

Frame Frame::from_unitary(const UnitaryMap& u) {
    const std::size_t n = u.size();
    std::vector<Complex> b(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) b[i * n + j] = u(j, i);
    }
    return Frame(std::move(b), n);
}

// ---------------------------------------------------------------------------

std::vector<double> omega(std::span<const Complex> z) {
    std::vector<double> t(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) t[i] = std::norm(z[i]);
    return t;
}

MixtureState omega(const PureState& q) {
    return MixtureState::validate(omega(q.amplitudes()));
}

void coefficients_in_frame_into(std::span<const Complex> q, const Frame& frame, std::span<Complex> out) {
    require_same_dimension(frame.size(), q.size());
    require_same_dimension(frame.size(), out.size());
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = inner(frame.vector(i), q);
}

std::vector<Complex> coefficients_in_frame(std::span<const Complex> q, const Frame& frame) {
    std::vector<Complex> c(q.size());
    coefficients_in_frame_into(q, frame, c);
    return c;
}

std::vector<Complex> coefficients_in_frame(const PureState& q, const Frame& frame) {
    return coefficients_in_frame(q.amplitudes(), frame);
}

std::vector<Complex> reconstruct(std::span<const Complex> coefficients, const Frame& frame) {
    const std::size_t n = frame.size();
    require_same_dimension(n, coefficients.size());
    std::vector<Complex> v(n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const auto b = frame.vector(i);
        for (std::size_t j = 0; j < n; ++j) v[j] += coefficients[i] * b[j];
    }
    return v;
}

MixtureState born_probabilities(const PureState& q, const Frame& frame) {
    return MixtureState::validate(omega(coefficients_in_frame(q, frame)));
}

PureState apply_unitary(const UnitaryMap& u, const PureState& q) {
    return PureState::validate(u.apply(q.amplitudes()), NormMode::Strict);
}

Frame transform_frame(const UnitaryMap& u, const Frame& frame) {
    const std::size_t n = frame.size();
    require_same_dimension(u.size(), n);
    std::vector<std::vector<Complex>> vectors;
    vectors.reserve(n);
    for (std::size_t i = 0; i < n; ++i) vectors.push_back(u.apply(frame.vector(i)));
    return Frame::from_vectors(vectors);
}

}  // namespace bornforge

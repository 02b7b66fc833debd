#include "bornforge/sampling.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "bornforge/error.hpp"

namespace bornforge {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t largest_modulus_index(std::span<const Complex> z) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double v = std::norm(z[i]);
        if (v > best_norm) {
            best_norm = v;
            best = i;
        }
    }
    return best;
}

// Unit scalar that makes the largest-modulus component real and nonnegative.
Complex phase_rotation(std::span<const Complex> z) {
    const Complex pivot = z[largest_modulus_index(z)];
    const double r = std::abs(pivot);
    return r == 0.0 ? Complex{1.0, 0.0} : std::conj(pivot) / r;
}

std::vector<Complex> phase_fixed(std::span<const Complex> z) {
    std::vector<Complex> out(z.begin(), z.end());
    const Complex rot = phase_rotation(z);
    for (auto& c : out) c *= rot;
    return out;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t x) { return splitmix64(x); }

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), stream_index_(stream_index) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
    for (std::uint64_t k = 0; k < stream_index; ++k) jump();
}

RngStream::result_type RngStream::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

void RngStream::jump() {
    static constexpr std::array<std::uint64_t, 4> kJump = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                                           0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
    std::array<std::uint64_t, 4> acc{};
    for (const std::uint64_t word : kJump) {
        for (int b = 0; b < 64; ++b) {
            if (word & (std::uint64_t{1} << b)) {
                for (int i = 0; i < 4; ++i) acc[i] ^= s_[i];
            }
            (*this)();
        }
    }
    s_ = acc;
}

double RngStream::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

// ---------------------------------------------------------------------------

void uniform_simplex_into(std::span<double> out, RngStream& rng) {
    double sum = 0.0;
    for (auto& x : out) {
        x = rng.standard_exponential();
        sum += x;
    }
    for (auto& x : out) x /= sum;
}

MixtureState uniform_simplex(std::size_t n, RngStream& rng) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 2");
    std::vector<double> t(n);
    uniform_simplex_into(t, rng);
    return MixtureState::validate(t);
}

void uniform_complex_sphere_into(std::span<Complex> out, RngStream& rng) {
    double norm2 = 0.0;
    for (auto& z : out) {
        const double re = rng.standard_normal();
        const double im = rng.standard_normal();
        z = Complex{re, im};
        norm2 += re * re + im * im;
    }
    const double norm = std::sqrt(norm2);
    for (auto& z : out) z /= norm;
}

PureState uniform_complex_sphere(std::size_t n, RngStream& rng) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 2");
    std::vector<Complex> q(n);
    uniform_complex_sphere_into(q, rng);
    return PureState::validate(q);
}

UnitaryMap haar_unitary(std::size_t n, RngStream& rng) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 2");
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double re = rng.standard_normal();
            const double im = rng.standard_normal();
            g(i, j) = Complex{re, im};
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    std::vector<Complex> rows(n * n);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) rows[static_cast<std::size_t>(i * dim + j)] = q(i, j);
    }
    return UnitaryMap::from_matrix(rows, n);
}

// ---------------------------------------------------------------------------

SamplerSpec SamplerSpec::epsilon_concentrated(AnyState center, double epsilon, double weight) {
    SamplerSpec spec;
    spec.kind = SamplerKind::EpsilonConcentrated;
    spec.center = std::move(center);
    spec.epsilon = epsilon;
    spec.weight = weight;
    spec.validate();
    return spec;
}

void SamplerSpec::validate() const {
    if (kind == SamplerKind::Uniform) return;
    if (!center) throw Error(ErrorKind::InvalidArgument, "epsilon_concentrated sampler needs a center");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    }
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "weight must lie in [0, 1]");
    }
}

double state_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "state_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double state_distance(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "state_distance");
    const Complex ra = phase_rotation(a);
    const Complex rb = phase_rotation(b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] * ra - b[i] * rb);
    return std::sqrt(s);
}

ObserverSampler::ObserverSampler(SamplerSpec spec, Model model, std::size_t n)
    : spec_(std::move(spec)), model_(model), n_(n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 2");
    spec_.validate();
    if (spec_.kind != SamplerKind::EpsilonConcentrated) return;
    if (model == Model::Real) {
        const auto* c = std::get_if<MixtureState>(&*spec_.center);
        if (!c) throw Error(ErrorKind::KindMismatch, "real model needs a real sampler center");
        if (c->size() != n) throw Error(ErrorKind::DimensionMismatch, "sampler center dimension");
        real_center_.assign(c->values().begin(), c->values().end());
    } else {
        const auto* c = std::get_if<PureState>(&*spec_.center);
        if (!c) throw Error(ErrorKind::KindMismatch, "complex model needs a complex sampler center");
        if (c->size() != n) throw Error(ErrorKind::DimensionMismatch, "sampler center dimension");
        complex_center_ = phase_fixed(c->amplitudes());
    }
}

void ObserverSampler::draw(std::span<double> out, RngStream& rng) const {
    if (model_ != Model::Real) throw Error(ErrorKind::KindMismatch, "complex sampler asked for a real draw");
    if (spec_.kind == SamplerKind::Uniform) {
        uniform_simplex_into(out, rng);
        return;
    }
    if (spec_.weight <= 0.0 || (spec_.weight < 1.0 && !(rng.uniform() < spec_.weight))) {
        uniform_simplex_into(out, rng);
        return;
    }
    for (std::uint64_t attempt = 0; attempt < kMaxConsecutiveRejections; ++attempt) {
        uniform_simplex_into(out, rng);
        if (state_distance(out, real_center_) <= spec_.epsilon) return;
    }
    throw Error(ErrorKind::RejectionExhausted, "epsilon neighbourhood too small to sample");
}

void ObserverSampler::draw(std::span<Complex> out, RngStream& rng) const {
    if (model_ != Model::Complex) throw Error(ErrorKind::KindMismatch, "real sampler asked for a complex draw");
    if (spec_.kind == SamplerKind::Uniform) {
        uniform_complex_sphere_into(out, rng);
        return;
    }
    if (spec_.weight <= 0.0 || (spec_.weight < 1.0 && !(rng.uniform() < spec_.weight))) {
        uniform_complex_sphere_into(out, rng);
        return;
    }
    for (std::uint64_t attempt = 0; attempt < kMaxConsecutiveRejections; ++attempt) {
        uniform_complex_sphere_into(out, rng);
        if (state_distance(out, complex_center_) <= spec_.epsilon) return;
    }
    throw Error(ErrorKind::RejectionExhausted, "epsilon neighbourhood too small to sample");
}

AnyState sample_observer(const SamplerSpec& spec, Model model, std::size_t n, RngStream& rng) {
    const ObserverSampler sampler(spec, model, n);
    if (model == Model::Real) {
        std::vector<double> t(n);
        sampler.draw(std::span<double>(t), rng);
        return MixtureState::validate(t);
    }
    std::vector<Complex> q(n);
    sampler.draw(std::span<Complex>(q), rng);
    return PureState::validate(q);
}

}  // namespace bornforge

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>

#include "bornforge/state_space.hpp"

namespace bornforge {

/// xoshiro256** stream. Sub-stream `k` of a seed is the base state advanced
/// by k jumps of 2^128 draws, so streams never overlap and a given
/// (seed, stream_index) pair always produces the same sequence no matter
/// which worker consumes it.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()();

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_index() const noexcept { return stream_index_; }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double standard_normal() { return normal_(*this); }
    double standard_exponential() { return exponential_(*this); }

private:
    void jump();

    std::array<std::uint64_t, 4> s_{};
    std::uint64_t seed_;
    std::uint64_t stream_index_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::exponential_distribution<double> exponential_{1.0};
};

/// SplitMix64 finalizer; used to derive child seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Flat Dirichlet draw written into `out` (normalized exponentials).
void uniform_simplex_into(std::span<double> out, RngStream& rng);
MixtureState uniform_simplex(std::size_t n, RngStream& rng);

/// Rotation-invariant draw on the complex unit sphere written into `out`
/// (normalized complex Gaussian).
void uniform_complex_sphere_into(std::span<Complex> out, RngStream& rng);
PureState uniform_complex_sphere(std::size_t n, RngStream& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal folded back into Q.
UnitaryMap haar_unitary(std::size_t n, RngStream& rng);

enum class SamplerKind { Uniform, EpsilonConcentrated };

/// Distribution over observer states. `EpsilonConcentrated` places mass
/// `weight` uniformly on the epsilon-ball around `center` and the rest on
/// the uniform measure.
struct SamplerSpec {
    SamplerKind kind = SamplerKind::Uniform;
    std::optional<AnyState> center;
    double epsilon = 0.0;
    double weight = 0.0;

    static SamplerSpec uniform() { return {}; }
    static SamplerSpec epsilon_concentrated(AnyState center, double epsilon, double weight);

    /// Throws InvalidArgument on an inconsistent spec.
    void validate() const;
};

inline constexpr std::uint64_t kMaxConsecutiveRejections = 1'000'000;

/// Distance used for epsilon neighbourhoods. Complex vectors are compared
/// after rotating each so its largest-modulus component is real and >= 0.
double state_distance(std::span<const double> a, std::span<const double> b);
double state_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Reusable observer-state generator for hot loops. Holds no RNG; the caller
/// passes its own stream.
class ObserverSampler {
public:
    ObserverSampler(SamplerSpec spec, Model model, std::size_t n);

    Model model() const noexcept { return model_; }
    std::size_t size() const noexcept { return n_; }
    const SamplerSpec& spec() const noexcept { return spec_; }

    void draw(std::span<double> out, RngStream& rng) const;
    void draw(std::span<Complex> out, RngStream& rng) const;

private:
    SamplerSpec spec_;
    Model model_;
    std::size_t n_;
    std::vector<double> real_center_;
    std::vector<Complex> complex_center_;  // phase-fixed
};

/// One draw of an observer state: a MixtureState for the real model, a
/// PureState for the complex model.
AnyState sample_observer(const SamplerSpec& spec, Model model, std::size_t n, RngStream& rng);

}  // namespace bornforge

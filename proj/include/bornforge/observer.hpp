#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "bornforge/error.hpp"
#include "bornforge/state_space.hpp"

namespace bornforge {

/// Per-outcome odds of "the outcome reflects the system" against "the
/// outcome reflects the observer". Kept as numerator/denominator pairs so
/// comparisons never divide; `ratios` is the materialized quotient with
/// 0/0 -> 0 and x/0 -> +inf.
struct LikelihoodRatios {
    Model model = Model::Real;
    std::vector<double> numerators;
    std::vector<double> denominators;
    std::vector<double> ratios;

    std::size_t size() const noexcept { return numerators.size(); }
};

/// Which odds the complex model compares: the moduli ratios |q_k|/|r_k| or
/// their squares (the Born-level odds). Both pick the same outcome.
enum class OddsScale { Moduli, Born };

/// Outcome chosen for one system/observer interaction. Indices are zero-based.
struct Decision {
    std::size_t outcome_index = 0;
    bool tied = false;
    std::vector<std::size_t> tied_set;

    bool operator==(const Decision&) const = default;
};

/// Three-way comparison of a_k/b_k against a_j/b_j for nonnegative inputs,
/// by cross-multiplication. A zero numerator is the ratio 0 whatever the
/// denominator.
inline int compare_ratios(double a_k, double b_k, double a_j, double b_j) noexcept {
    if (a_k == 0.0 || a_j == 0.0) {
        return (a_k == 0.0 && a_j == 0.0) ? 0 : (a_k == 0.0 ? -1 : 1);
    }
    const double lhs = a_k * b_j;
    const double rhs = a_j * b_k;
    return (lhs > rhs) - (lhs < rhs);
}

/// Allocation-free argmax with lowest-index tie-break. Sets `*tied` when
/// another index attains the same maximum. Throws AllRatiosZero when every
/// numerator vanishes.
std::size_t decide_index(std::span<const double> numerators, std::span<const double> denominators,
                         bool* tied = nullptr);

LikelihoodRatios likelihood_ratios(std::span<const double> system, std::span<const double> observer);
LikelihoodRatios likelihood_ratios(std::span<const Complex> system, std::span<const Complex> observer,
                                   OddsScale scale = OddsScale::Moduli);
LikelihoodRatios likelihood_ratios(const MixtureState& system, const MixtureState& observer);
LikelihoodRatios likelihood_ratios(const PureState& system, const PureState& observer,
                                   OddsScale scale = OddsScale::Moduli);
/// Throws KindMismatch when the two states belong to different models.
LikelihoodRatios likelihood_ratios(const AnyState& system, const AnyState& observer);

Decision decide(const LikelihoodRatios& ratios);
Decision decide(const MixtureState& system, const MixtureState& observer);
Decision decide(const PureState& system, const PureState& observer, OddsScale scale = OddsScale::Moduli);
Decision decide(const AnyState& system, const AnyState& observer);
/// Decision on the coefficients of both states in `frame`.
Decision decide_in_frame(const PureState& system, const PureState& observer, const Frame& frame,
                         OddsScale scale = OddsScale::Moduli);

/// Strict eigenset membership: ratio k beats every other ratio.
bool eigenset_contains(std::size_t k, const LikelihoodRatios& ratios);
bool eigenset_contains(std::size_t k, const MixtureState& system, const MixtureState& observer);
bool eigenset_contains(std::size_t k, const PureState& system, const PureState& observer);

/// sum_{i != k} lambda_i e_i + lambda_k t: a point of the open simplex whose
/// vertices are the outcome vertices with vertex k replaced by the system.
MixtureState barycentric_observer(std::size_t k, const MixtureState& system, std::span<const double> lambda);

namespace detail {
void check_swap(std::size_t n, std::size_t i, std::size_t j);
}

template <class Vec>
Vec swap_values(Vec v, std::size_t i, std::size_t j) {
    detail::check_swap(v.size(), i, j);
    std::swap(v[i], v[j]);
    return v;
}

MixtureState swap_components(const MixtureState& state, std::size_t i, std::size_t j);
PureState swap_components(const PureState& state, std::size_t i, std::size_t j);

}  // namespace bornforge

#include "bornforge/observer.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace bornforge {

namespace {

void require_match(std::size_t a, std::size_t b) {
    if (a != b) {
        throw Error(ErrorKind::DimensionMismatch,
                    "system has " + std::to_string(a) + " components, observer " + std::to_string(b));
    }
}

LikelihoodRatios make_ratios(Model model, std::vector<double> num, std::vector<double> den) {
    bool any_denominator = false;
    for (double d : den) any_denominator = any_denominator || d != 0.0;
    if (!any_denominator) throw Error(ErrorKind::ZeroVector, "observer state is the zero vector");

    LikelihoodRatios out;
    out.model = model;
    out.ratios.resize(num.size());
    for (std::size_t k = 0; k < num.size(); ++k) {
        if (num[k] == 0.0) {
            out.ratios[k] = 0.0;
        } else if (den[k] == 0.0) {
            out.ratios[k] = std::numeric_limits<double>::infinity();
        } else {
            out.ratios[k] = num[k] / den[k];
        }
    }
    out.numerators = std::move(num);
    out.denominators = std::move(den);
    return out;
}

void require_nonnegative(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!(x >= 0.0)) throw Error(ErrorKind::NegativeComponent, std::string(what) + " has a negative entry");
    }
}

}  // namespace

std::size_t decide_index(std::span<const double> numerators, std::span<const double> denominators, bool* tied) {
    require_match(numerators.size(), denominators.size());
    std::size_t best = 0;
    bool is_tied = false;
    for (std::size_t k = 1; k < numerators.size(); ++k) {
        const int c = compare_ratios(numerators[k], denominators[k], numerators[best], denominators[best]);
        if (c > 0) {
            best = k;
            is_tied = false;
        } else if (c == 0) {
            is_tied = true;
        }
    }
    if (numerators[best] == 0.0) throw Error(ErrorKind::AllRatiosZero, "no outcome has a positive ratio");
    if (tied) *tied = is_tied;
    return best;
}

LikelihoodRatios likelihood_ratios(std::span<const double> system, std::span<const double> observer) {
    require_match(system.size(), observer.size());
    require_nonnegative(system, "system");
    require_nonnegative(observer, "observer");
    return make_ratios(Model::Real, {system.begin(), system.end()}, {observer.begin(), observer.end()});
}

LikelihoodRatios likelihood_ratios(std::span<const Complex> system, std::span<const Complex> observer,
                                   OddsScale scale) {
    require_match(system.size(), observer.size());
    std::vector<double> num(system.size());
    std::vector<double> den(observer.size());
    for (std::size_t k = 0; k < system.size(); ++k) {
        if (scale == OddsScale::Moduli) {
            num[k] = std::abs(system[k]);
            den[k] = std::abs(observer[k]);
        } else {
            num[k] = std::norm(system[k]);
            den[k] = std::norm(observer[k]);
        }
    }
    return make_ratios(Model::Complex, std::move(num), std::move(den));
}

LikelihoodRatios likelihood_ratios(const MixtureState& system, const MixtureState& observer) {
    return likelihood_ratios(system.values(), observer.values());
}

LikelihoodRatios likelihood_ratios(const PureState& system, const PureState& observer, OddsScale scale) {
    return likelihood_ratios(system.amplitudes(), observer.amplitudes(), scale);
}

LikelihoodRatios likelihood_ratios(const AnyState& system, const AnyState& observer) {
    if (system.index() != observer.index()) {
        throw Error(ErrorKind::KindMismatch, "system and observer belong to different models");
    }
    if (const auto* s = std::get_if<MixtureState>(&system)) {
        return likelihood_ratios(*s, std::get<MixtureState>(observer));
    }
    return likelihood_ratios(std::get<PureState>(system), std::get<PureState>(observer));
}

Decision decide(const LikelihoodRatios& ratios) {
    Decision d;
    d.outcome_index = decide_index(ratios.numerators, ratios.denominators);
    const std::size_t best = d.outcome_index;
    for (std::size_t k = 0; k < ratios.size(); ++k) {
        if (compare_ratios(ratios.numerators[k], ratios.denominators[k], ratios.numerators[best],
                           ratios.denominators[best]) == 0) {
            d.tied_set.push_back(k);
        }
    }
    d.tied = d.tied_set.size() > 1;
    return d;
}

Decision decide(const MixtureState& system, const MixtureState& observer) {
    return decide(likelihood_ratios(system, observer));
}

Decision decide(const PureState& system, const PureState& observer, OddsScale scale) {
    return decide(likelihood_ratios(system, observer, scale));
}

Decision decide(const AnyState& system, const AnyState& observer) {
    return decide(likelihood_ratios(system, observer));
}

Decision decide_in_frame(const PureState& system, const PureState& observer, const Frame& frame, OddsScale scale) {
    return decide(likelihood_ratios(coefficients_in_frame(system, frame), coefficients_in_frame(observer, frame), scale));
}

bool eigenset_contains(std::size_t k, const LikelihoodRatios& ratios) {
    if (k >= ratios.size()) throw Error(ErrorKind::IndexOutOfRange, "outcome " + std::to_string(k));
    const Decision d = decide(ratios);  // surfaces AllRatiosZero
    return d.outcome_index == k && !d.tied;
}

bool eigenset_contains(std::size_t k, const MixtureState& system, const MixtureState& observer) {
    return eigenset_contains(k, likelihood_ratios(system, observer));
}

bool eigenset_contains(std::size_t k, const PureState& system, const PureState& observer) {
    return eigenset_contains(k, likelihood_ratios(system, observer));
}

MixtureState barycentric_observer(std::size_t k, const MixtureState& system, std::span<const double> lambda) {
    const std::size_t n = system.size();
    if (k >= n) throw Error(ErrorKind::IndexOutOfRange, "outcome " + std::to_string(k));
    if (lambda.size() != n) throw Error(ErrorKind::DimensionMismatch, "lambda has wrong length");
    double sum = 0.0;
    for (double l : lambda) {
        if (!(l > 0.0)) throw Error(ErrorKind::InvalidBarycentric, "weights must be strictly positive");
        sum += l;
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::InvalidBarycentric, "weights sum to " + std::to_string(sum));
    }
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = lambda[k] * system[i] + (i == k ? 0.0 : lambda[i]);
    }
    return MixtureState::validate(r);
}

void detail::check_swap(std::size_t n, std::size_t i, std::size_t j) {
    if (i >= n || j >= n) {
        throw Error(ErrorKind::IndexOutOfRange, "swap indices " + std::to_string(i) + ", " + std::to_string(j) +
                                                    " for dimension " + std::to_string(n));
    }
    if (i == j) throw Error(ErrorKind::InvalidArgument, "swap needs two distinct indices");
}

MixtureState swap_components(const MixtureState& state, std::size_t i, std::size_t j) {
    return MixtureState(swap_values(state.t_, i, j));
}

PureState swap_components(const PureState& state, std::size_t i, std::size_t j) {
    return PureState(swap_values(state.q_, i, j));
}

}  // namespace bornforge

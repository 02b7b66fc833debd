#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bornforge/geometry.hpp"
#include "bornforge/observer.hpp"
#include "bornforge/sampling.hpp"
#include "bornforge/state_space.hpp"

namespace bornforge {

/// A repeated-measurement run: `trials` fresh observer states, each
/// interacting once with an identical copy of `system`.
struct ExperimentConfig {
    Model model = Model::Real;
    AnyState system = MixtureState::barycenter(2);
    std::optional<Frame> frame;  // complex model only; computational frame when empty
    SamplerSpec sampler;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> checkpoints;  // empty: powers of ten from 10^3
    OddsScale odds = OddsScale::Moduli;
    bool record_outcomes = false;
    std::size_t threads = 0;

    std::size_t dimension() const;
    /// Throws InvalidArgument / KindMismatch / DimensionMismatch on inconsistent fields.
    void validate() const;
};

ExperimentConfig real_experiment(MixtureState system, std::uint64_t trials, std::uint64_t seed);
ExperimentConfig complex_experiment(PureState system, std::uint64_t trials, std::uint64_t seed);

/// Powers of ten from 10^3 up to `trials`, with `trials` itself appended.
std::vector<std::uint64_t> default_checkpoints(std::uint64_t trials);

/// `per_decade` log-spaced checkpoints in [first, last].
std::vector<std::uint64_t> log_spaced_checkpoints(std::uint64_t first, std::uint64_t last, std::size_t per_decade);

struct TracePoint {
    std::uint64_t trials = 0;
    double tv_distance = 0.0;
    std::vector<double> frequencies;
};

struct ExperimentResult {
    Model model = Model::Real;
    std::size_t n = 0;
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> counts;
    std::vector<double> frequencies;
    std::vector<double> reference;
    std::vector<double> ci_low;  // 95% Wilson
    std::vector<double> ci_high;
    std::vector<double> ci_halfwidths;
    std::vector<TracePoint> trace;
    std::uint64_t tie_count = 0;
    std::vector<std::uint16_t> outcomes;  // only when record_outcomes

    /// Binomial standard error of each frequency under the reference.
    std::vector<double> sigmas() const;
    /// (frequency - reference) / sigma; zero when both sigma and residual vanish.
    std::vector<double> z_scores() const;
    /// |frequency - reference| <= k sigma for every outcome.
    bool within_sigma(double k) const;
};

ExperimentResult run_repeated(const ExperimentConfig& config);

/// OLS slope of log(TV) on log(N) over trace points with N in [min_trials, max_trials].
/// A zero TV is floored at 1/(2N), the resolution of the frequencies.
double convergence_slope(const ExperimentResult& result, std::uint64_t min_trials, std::uint64_t max_trials);

// ---------------------------------------------------------------------------

/// Ensemble mixing pure states with weights xi.
struct MixtureSpec {
    std::vector<PureState> components;
    MixtureState weights = MixtureState::barycenter(2);

    void validate() const;
};

struct LinearityReport {
    ExperimentResult result;          // reference = linear prediction
    std::vector<double> residuals;    // frequency - prediction
    std::vector<double> sigmas;
    std::vector<double> z_scores;
    double max_abs_z = 0.0;
    bool within_4_sigma = false;
    bool violation = false;           // some |z| > 5
};

/// sum_c xi_c born(psi_c, frame).
std::vector<double> linear_prediction(const MixtureSpec& spec, const Frame& frame);

/// Observer state with |<b_k, c>|^2 equal to the linear prediction: the
/// image of the mixture point on the sphere. Centre for the non-uniform prior
/// that breaks linearity.
PureState mixture_center(const MixtureSpec& spec, const Frame& frame);

/// Each trial draws a component by weight, then one observer state from
/// `config.sampler`. `config.model` must be Complex; `config.system` is ignored.
LinearityReport run_mixture(const MixtureSpec& spec, const ExperimentConfig& config);

/// Linearity under an epsilon-concentrated observer prior. The mixture is
/// observed as the single state mixture_center(spec) and compared with
/// sum_c xi_c q_c, where q_c are this observer's frequencies for each
/// component alone (independent runs). Residual sigmas combine all runs;
/// `result.reference` holds that prediction.
LinearityReport run_mixture_violation(const MixtureSpec& spec, const SamplerSpec& nonuniform,
                                      const ExperimentConfig& config);

// ---------------------------------------------------------------------------

struct MatchReport {
    std::uint64_t trials = 0;
    std::uint64_t matches = 0;

    double match_rate() const { return trials == 0 ? 1.0 : static_cast<double>(matches) / static_cast<double>(trials); }
    bool all_match() const { return matches == trials; }
};

/// Paired decisions in (psi_s, psi_m, F) and (U psi_s, U psi_m, U F) for
/// `unitaries` Haar-random U, `per_unitary` observer draws each.
MatchReport run_unitary_invariance(const ExperimentConfig& config, std::uint64_t unitaries, std::uint64_t seed,
                                   std::uint64_t per_unitary = 1);

/// Decisions before and after multiplying the system or the observer by a
/// random complex scalar with modulus in [1e-3, 1e3].
MatchReport run_projective_invariance(const ExperimentConfig& config, std::uint64_t scalars, std::uint64_t seed);

/// Decisions from the moduli odds against decisions from their squares.
MatchReport run_monotone_invariance(const ExperimentConfig& config, std::uint64_t trials, std::uint64_t seed);

struct InvarianceReport {
    MatchReport projective;
    MatchReport monotone;
    MatchReport unitary;

    bool passed() const { return projective.all_match() && monotone.all_match() && unitary.all_match(); }
};

InvarianceReport run_invariance_suite(const ExperimentConfig& config, std::uint64_t count, std::uint64_t seed);

// ---------------------------------------------------------------------------

struct ContextualityReport {
    Decision before;
    Decision after;
    std::size_t original_outcome = 0;
    VolumeEstimate probability_before;
    VolumeEstimate probability_after;
    double z_difference = 0.0;

    bool decision_changed() const { return before.outcome_index != after.outcome_index; }
    bool probability_agrees() const { return z_difference < 4.0; }
};

/// Swaps system components i and j (neither may be the decided outcome) with
/// the observer fixed, and estimates the original outcome's probability
/// before and after the swap on independent streams.
ContextualityReport run_contextuality_demo(const MixtureState& system, const MixtureState& observer,
                                           std::size_t i, std::size_t j, std::uint64_t trials,
                                           std::uint64_t seed);

// ---------------------------------------------------------------------------

struct AlphaDiagnostic {
    double alpha = 0.0;
    double max_odds = 0.0;
    std::size_t argmax = 0;
    bool majorization_holds = false;  // max_odds > 1
};

/// `p_sys` sums to alpha in (0, 1) and `p_obs` to 1 - alpha.
AlphaDiagnostic alpha_diagnostic(std::span<const double> p_sys, std::span<const double> p_obs);

struct AlphaSweepReport {
    std::uint64_t count = 0;
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    std::uint64_t holds = 0;
    double smallest_max_odds = 0.0;
    double largest_max_odds = 0.0;
};

/// Random sub-normalized pairs: alpha uniform in (alpha_min, alpha_max) and
/// independent flat-Dirichlet shapes, or (proportional) a single shape for both.
AlphaSweepReport run_alpha_sweep(std::size_t n, std::uint64_t count, double alpha_min, double alpha_max,
                                 bool proportional, std::uint64_t seed);

}  // namespace bornforge

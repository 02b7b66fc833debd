#include "bornforge/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bornforge/error.hpp"
#include "bornforge/parallel.hpp"
#include "bornforge/stats.hpp"

namespace bornforge {

namespace {

struct BatchTally {
    std::vector<std::uint64_t> counts;
    std::uint64_t ties = 0;
    std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> snapshots;  // (checkpoint index, counts)
    std::vector<std::uint16_t> outcomes;
};

struct EngineSetup {
    std::size_t n = 0;
    Model model = Model::Real;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> checkpoints;
    bool record_outcomes = false;
    std::size_t threads = 0;
    std::vector<double> reference;
};

std::vector<std::uint64_t> resolve_checkpoints(const std::vector<std::uint64_t>& requested, std::uint64_t trials) {
    std::vector<std::uint64_t> cps = requested.empty() ? default_checkpoints(trials) : requested;
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    return cps;
}

/// Runs `trials` independent trials batch-parallel. `make_kernel()` builds a
/// per-batch callable `(RngStream&, bool& tied) -> outcome`.
template <class MakeKernel>
ExperimentResult run_engine(const EngineSetup& setup, MakeKernel&& make_kernel) {
    const auto& cps = setup.checkpoints;
    const auto tallies = run_batches<BatchTally>(
        setup.trials,
        [&](const BatchRange& range) {
            RngStream rng(setup.seed, range.index + 1);
            auto kernel = make_kernel();
            BatchTally t;
            t.counts.assign(setup.n, 0);
            if (setup.record_outcomes) t.outcomes.reserve(range.end - range.begin);
            auto cp = std::lower_bound(cps.begin(), cps.end(), range.begin + 1);
            for (std::uint64_t i = range.begin; i < range.end; ++i) {
                bool tied = false;
                const std::size_t k = kernel(rng, tied);
                ++t.counts[k];
                t.ties += tied ? 1 : 0;
                if (setup.record_outcomes) t.outcomes.push_back(static_cast<std::uint16_t>(k));
                while (cp != cps.end() && *cp == i + 1) {
                    t.snapshots.emplace_back(static_cast<std::size_t>(cp - cps.begin()), t.counts);
                    ++cp;
                }
            }
            return t;
        },
        setup.threads);

    ExperimentResult r;
    r.model = setup.model;
    r.n = setup.n;
    r.trials = setup.trials;
    r.reference = setup.reference;
    r.counts.assign(setup.n, 0);
    for (const auto& t : tallies) {
        for (const auto& [idx, snap] : t.snapshots) {
            TracePoint p;
            p.trials = cps[idx];
            p.frequencies.resize(setup.n);
            for (std::size_t k = 0; k < setup.n; ++k) {
                p.frequencies[k] = static_cast<double>(r.counts[k] + snap[k]) / static_cast<double>(p.trials);
            }
            p.tv_distance = stats::total_variation(p.frequencies, r.reference);
            r.trace.push_back(std::move(p));
        }
        for (std::size_t k = 0; k < setup.n; ++k) r.counts[k] += t.counts[k];
        r.tie_count += t.ties;
        if (setup.record_outcomes) r.outcomes.insert(r.outcomes.end(), t.outcomes.begin(), t.outcomes.end());
    }

    r.frequencies.resize(setup.n);
    for (std::size_t k = 0; k < setup.n; ++k) {
        r.frequencies[k] = static_cast<double>(r.counts[k]) / static_cast<double>(r.trials);
        const auto ci = stats::wilson_interval(r.counts[k], r.trials, 0.95);
        r.ci_low.push_back(ci.low);
        r.ci_high.push_back(ci.high);
        r.ci_halfwidths.push_back(0.5 * (ci.high - ci.low));
    }
    return r;
}

Frame frame_or_computational(const ExperimentConfig& config) {
    return config.frame ? *config.frame : Frame::computational(config.dimension());
}

void moduli_into(std::span<const Complex> c, OddsScale scale, std::span<double> out) {
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = scale == OddsScale::Moduli ? std::abs(c[i]) : std::norm(c[i]);
}

/// Decision kernel for the complex model against a fixed set of system
/// moduli; transforms each observer draw into `frame` unless it is the
/// computational one.
class ComplexKernel {
public:
    ComplexKernel(const ObserverSampler& sampler, const std::optional<Frame>& frame, OddsScale scale)
        : sampler_(sampler), frame_(frame), scale_(scale), draw_(sampler.size()), coeffs_(sampler.size()),
          moduli_(sampler.size()) {}

    std::size_t decide_against(std::span<const double> system_moduli, RngStream& rng, bool& tied) {
        sampler_.draw(std::span<Complex>(draw_), rng);
        if (frame_) {
            coefficients_in_frame_into(draw_, *frame_, coeffs_);
            moduli_into(coeffs_, scale_, moduli_);
        } else {
            moduli_into(draw_, scale_, moduli_);
        }
        return decide_index(system_moduli, moduli_, &tied);
    }

private:
    const ObserverSampler& sampler_;
    const std::optional<Frame>& frame_;
    OddsScale scale_;
    std::vector<Complex> draw_;
    std::vector<Complex> coeffs_;
    std::vector<double> moduli_;
};

void require_complex(const ExperimentConfig& config, const char* what) {
    if (config.model != Model::Complex) {
        throw Error(ErrorKind::PreconditionViolated, std::string(what) + " needs the complex model");
    }
}

Complex random_scalar(RngStream& rng) {
    const double log_modulus = std::log(1e-3) + rng.uniform() * (std::log(1e3) - std::log(1e-3));
    return std::polar(std::exp(log_modulus), 2.0 * std::numbers::pi * rng.uniform());
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t ExperimentConfig::dimension() const {
    return std::visit([](const auto& s) { return s.size(); }, system);
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
    const bool real_system = std::holds_alternative<MixtureState>(system);
    if (real_system != (model == Model::Real)) {
        throw Error(ErrorKind::KindMismatch, "system state does not match the model");
    }
    if (frame) {
        if (model != Model::Complex) throw Error(ErrorKind::InvalidArgument, "a frame needs the complex model");
        if (frame->size() != dimension()) throw Error(ErrorKind::DimensionMismatch, "frame dimension");
    }
    sampler.validate();
    if (sampler.center) {
        const bool real_center = std::holds_alternative<MixtureState>(*sampler.center);
        if (real_center != real_system) throw Error(ErrorKind::KindMismatch, "sampler center does not match the model");
        const std::size_t cn = std::visit([](const auto& s) { return s.size(); }, *sampler.center);
        if (cn != dimension()) throw Error(ErrorKind::DimensionMismatch, "sampler center dimension");
    }
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
        throw Error(ErrorKind::InvalidArgument, "checkpoints must be sorted");
    }
    for (auto c : checkpoints) {
        if (c < 1 || c > trials) throw Error(ErrorKind::InvalidArgument, "checkpoint outside [1, trials]");
    }
}

ExperimentConfig real_experiment(MixtureState system, std::uint64_t trials, std::uint64_t seed) {
    ExperimentConfig c;
    c.model = Model::Real;
    c.system = std::move(system);
    c.trials = trials;
    c.seed = seed;
    return c;
}

ExperimentConfig complex_experiment(PureState system, std::uint64_t trials, std::uint64_t seed) {
    ExperimentConfig c;
    c.model = Model::Complex;
    c.system = std::move(system);
    c.trials = trials;
    c.seed = seed;
    return c;
}

std::vector<std::uint64_t> default_checkpoints(std::uint64_t trials) {
    std::vector<std::uint64_t> cps;
    for (std::uint64_t c = 1000; c <= trials; c *= 10) {
        cps.push_back(c);
        if (c > std::numeric_limits<std::uint64_t>::max() / 10) break;
    }
    if (cps.empty() || cps.back() != trials) cps.push_back(trials);
    return cps;
}

std::vector<std::uint64_t> log_spaced_checkpoints(std::uint64_t first, std::uint64_t last, std::size_t per_decade) {
    if (first < 1 || last < first || per_decade < 1) {
        throw Error(ErrorKind::InvalidArgument, "bad checkpoint range");
    }
    std::vector<std::uint64_t> cps;
    const double lo = std::log10(static_cast<double>(first));
    const double hi = std::log10(static_cast<double>(last));
    const auto steps = static_cast<std::size_t>(std::llround((hi - lo) * static_cast<double>(per_decade)));
    for (std::size_t s = 0; s <= steps; ++s) {
        const double e = steps == 0 ? lo : lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(steps);
        cps.push_back(static_cast<std::uint64_t>(std::llround(std::pow(10.0, e))));
    }
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    return cps;
}

std::vector<double> ExperimentResult::sigmas() const {
    std::vector<double> s(n);
    for (std::size_t k = 0; k < n; ++k) {
        s[k] = std::sqrt(reference[k] * (1.0 - reference[k]) / static_cast<double>(trials));
    }
    return s;
}

std::vector<double> ExperimentResult::z_scores() const {
    const auto s = sigmas();
    std::vector<double> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double d = frequencies[k] - reference[k];
        if (s[k] > 0.0) {
            z[k] = d / s[k];
        } else {
            z[k] = d == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), d);
        }
    }
    return z;
}

bool ExperimentResult::within_sigma(double k) const {
    const auto z = z_scores();
    return std::all_of(z.begin(), z.end(), [&](double v) { return std::abs(v) <= k; });
}

ExperimentResult run_repeated(const ExperimentConfig& config) {
    config.validate();
    const std::size_t n = config.dimension();
    const ObserverSampler sampler(config.sampler, config.model, n);

    EngineSetup setup;
    setup.n = n;
    setup.model = config.model;
    setup.trials = config.trials;
    setup.seed = config.seed;
    setup.checkpoints = resolve_checkpoints(config.checkpoints, config.trials);
    setup.record_outcomes = config.record_outcomes;
    setup.threads = config.threads;

    if (config.model == Model::Real) {
        const auto& system = std::get<MixtureState>(config.system);
        setup.reference.assign(system.values().begin(), system.values().end());
        return run_engine(setup, [&] {
            return [&, observer = std::vector<double>(n)](RngStream& rng, bool& tied) mutable {
                sampler.draw(std::span<double>(observer), rng);
                return decide_index(system.values(), observer, &tied);
            };
        });
    }

    const auto& system = std::get<PureState>(config.system);
    const Frame frame = frame_or_computational(config);
    const auto born = born_probabilities(system, frame);
    setup.reference.assign(born.values().begin(), born.values().end());
    std::vector<double> system_moduli(n);
    moduli_into(coefficients_in_frame(system, frame), config.odds, system_moduli);
    return run_engine(setup, [&] {
        return [&, kernel = ComplexKernel(sampler, config.frame, config.odds)](RngStream& rng, bool& tied) mutable {
            return kernel.decide_against(system_moduli, rng, tied);
        };
    });
}

double convergence_slope(const ExperimentResult& result, std::uint64_t min_trials, std::uint64_t max_trials) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& p : result.trace) {
        if (p.trials < min_trials || p.trials > max_trials) continue;
        const double floor = 0.5 / static_cast<double>(p.trials);
        x.push_back(std::log(static_cast<double>(p.trials)));
        y.push_back(std::log(std::max(p.tv_distance, floor)));
    }
    return stats::ols_slope(x, y);
}

// ---------------------------------------------------------------------------

void MixtureSpec::validate() const {
    if (components.empty()) throw Error(ErrorKind::InvalidArgument, "mixture has no components");
    if (components.size() != weights.size()) {
        throw Error(ErrorKind::DimensionMismatch, "one weight per component is required");
    }
    const std::size_t n = components.front().size();
    for (const auto& c : components) {
        if (c.size() != n) throw Error(ErrorKind::DimensionMismatch, "mixture components differ in dimension");
    }
}

std::vector<double> linear_prediction(const MixtureSpec& spec, const Frame& frame) {
    spec.validate();
    std::vector<double> p(frame.size(), 0.0);
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
        const auto born = born_probabilities(spec.components[c], frame);
        for (std::size_t k = 0; k < p.size(); ++k) p[k] += spec.weights[c] * born[k];
    }
    return p;
}

PureState mixture_center(const MixtureSpec& spec, const Frame& frame) {
    const auto p = linear_prediction(spec, frame);
    std::vector<Complex> coeffs(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) coeffs[k] = std::sqrt(p[k]);
    return PureState::validate(reconstruct(coeffs, frame));
}

LinearityReport run_mixture(const MixtureSpec& spec, const ExperimentConfig& config) {
    require_complex(config, "run_mixture");
    spec.validate();
    const std::size_t n = spec.components.front().size();
    ExperimentConfig cfg = config;
    cfg.system = spec.components.front();
    cfg.validate();
    if (n != cfg.dimension()) throw Error(ErrorKind::DimensionMismatch, "mixture dimension");

    const Frame frame = frame_or_computational(cfg);
    const ObserverSampler sampler(cfg.sampler, Model::Complex, n);
    std::vector<std::vector<double>> component_moduli;
    for (const auto& c : spec.components) {
        std::vector<double> m(n);
        moduli_into(coefficients_in_frame(c, frame), cfg.odds, m);
        component_moduli.push_back(std::move(m));
    }
    std::vector<double> cumulative;
    double acc = 0.0;
    for (std::size_t c = 0; c < spec.weights.size(); ++c) cumulative.push_back(acc += spec.weights[c]);

    EngineSetup setup;
    setup.n = n;
    setup.model = Model::Complex;
    setup.trials = cfg.trials;
    setup.seed = cfg.seed;
    setup.checkpoints = resolve_checkpoints(cfg.checkpoints, cfg.trials);
    setup.record_outcomes = cfg.record_outcomes;
    setup.threads = cfg.threads;
    setup.reference = linear_prediction(spec, frame);

    LinearityReport report;
    report.result = run_engine(setup, [&] {
        return [&, kernel = ComplexKernel(sampler, cfg.frame, cfg.odds)](RngStream& rng, bool& tied) mutable {
            const double u = rng.uniform() * cumulative.back();
            std::size_t c = 0;
            while (c + 1 < cumulative.size() && !(u < cumulative[c])) ++c;
            return kernel.decide_against(component_moduli[c], rng, tied);
        };
    });
    const auto& r = report.result;
    report.sigmas = r.sigmas();
    report.z_scores = r.z_scores();
    for (std::size_t k = 0; k < n; ++k) {
        report.residuals.push_back(r.frequencies[k] - r.reference[k]);
        report.max_abs_z = std::max(report.max_abs_z, std::abs(report.z_scores[k]));
    }
    report.within_4_sigma = report.max_abs_z <= 4.0;
    report.violation = report.max_abs_z > 5.0;
    return report;
}

LinearityReport run_mixture_violation(const MixtureSpec& spec, const SamplerSpec& nonuniform,
                                      const ExperimentConfig& config) {
    if (nonuniform.kind != SamplerKind::EpsilonConcentrated) {
        throw Error(ErrorKind::PreconditionViolated, "run_mixture_violation needs an epsilon_concentrated sampler");
    }
    require_complex(config, "run_mixture_violation");
    spec.validate();
    ExperimentConfig cfg = config;
    cfg.sampler = nonuniform;
    cfg.system = spec.components.front();
    cfg.validate();
    const std::size_t n = cfg.dimension();
    const Frame frame = frame_or_computational(cfg);

    // q_c: what this observer reports for each pure component on its own.
    std::vector<double> prediction(n, 0.0);
    std::vector<double> variance(n, 0.0);
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
        ExperimentConfig part = cfg;
        part.system = spec.components[c];
        part.seed = mix_seed(cfg.seed + 1 + c);
        part.record_outcomes = false;
        const auto r = run_repeated(part);
        const double xi = spec.weights[c];
        for (std::size_t k = 0; k < n; ++k) {
            const double f = r.frequencies[k];
            prediction[k] += xi * f;
            variance[k] += xi * xi * f * (1 - f) / static_cast<double>(r.trials);
        }
    }

    ExperimentConfig point = cfg;
    point.system = mixture_center(spec, frame);
    LinearityReport report;
    report.result = run_repeated(point);
    auto& r = report.result;
    r.reference = prediction;
    for (auto& t : r.trace) t.tv_distance = stats::total_variation(t.frequencies, prediction);

    for (std::size_t k = 0; k < n; ++k) {
        const double f = r.frequencies[k];
        const double residual = f - prediction[k];
        const double sigma = std::sqrt(variance[k] + f * (1 - f) / static_cast<double>(r.trials));
        const double z = sigma > 0.0 ? residual / sigma : (residual == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), residual));
        report.residuals.push_back(residual);
        report.sigmas.push_back(sigma);
        report.z_scores.push_back(z);
        report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
    }
    report.within_4_sigma = report.max_abs_z <= 4.0;
    report.violation = report.max_abs_z > 5.0;
    return report;
}

// ---------------------------------------------------------------------------

MatchReport run_unitary_invariance(const ExperimentConfig& config, std::uint64_t unitaries, std::uint64_t seed,
                                   std::uint64_t per_unitary) {
    require_complex(config, "run_unitary_invariance");
    config.validate();
    const std::size_t n = config.dimension();
    const auto& system = std::get<PureState>(config.system);
    const Frame frame = frame_or_computational(config);
    const ObserverSampler sampler(config.sampler, Model::Complex, n);
    RngStream rng(seed, 0);

    MatchReport report;
    std::vector<Complex> observer(n);
    for (std::uint64_t u = 0; u < unitaries; ++u) {
        const UnitaryMap map = haar_unitary(n, rng);
        const Frame moved_frame = transform_frame(map, frame);
        const auto moved_system = map.apply(system.amplitudes());
        const auto sys_before = coefficients_in_frame(system, frame);
        const auto sys_after = coefficients_in_frame(moved_system, moved_frame);
        for (std::uint64_t t = 0; t < per_unitary; ++t) {
            sampler.draw(std::span<Complex>(observer), rng);
            const auto before = decide(likelihood_ratios(sys_before, coefficients_in_frame(observer, frame), config.odds));
            const auto moved_observer = map.apply(observer);
            const auto after = decide(
                likelihood_ratios(sys_after, coefficients_in_frame(moved_observer, moved_frame), config.odds));
            ++report.trials;
            report.matches += before == after ? 1 : 0;
        }
    }
    return report;
}

MatchReport run_projective_invariance(const ExperimentConfig& config, std::uint64_t scalars, std::uint64_t seed) {
    require_complex(config, "run_projective_invariance");
    config.validate();
    const std::size_t n = config.dimension();
    const Frame frame = frame_or_computational(config);
    const auto sys = coefficients_in_frame(std::get<PureState>(config.system), frame);
    const ObserverSampler sampler(config.sampler, Model::Complex, n);
    RngStream rng(seed, 0);

    MatchReport report;
    std::vector<Complex> observer(n);
    for (std::uint64_t s = 0; s < scalars; ++s) {
        sampler.draw(std::span<Complex>(observer), rng);
        const auto obs = coefficients_in_frame(observer, frame);
        const Complex z_sys = random_scalar(rng);
        const Complex z_obs = random_scalar(rng);
        auto scaled_sys = sys;
        auto scaled_obs = obs;
        for (auto& c : scaled_sys) c *= z_sys;
        for (auto& c : scaled_obs) c *= z_obs;
        const std::size_t base = decide(likelihood_ratios(sys, obs, config.odds)).outcome_index;
        const std::size_t a = decide(likelihood_ratios(scaled_sys, obs, config.odds)).outcome_index;
        const std::size_t b = decide(likelihood_ratios(sys, scaled_obs, config.odds)).outcome_index;
        ++report.trials;
        report.matches += (a == base && b == base) ? 1 : 0;
    }
    return report;
}

MatchReport run_monotone_invariance(const ExperimentConfig& config, std::uint64_t trials, std::uint64_t seed) {
    require_complex(config, "run_monotone_invariance");
    config.validate();
    const std::size_t n = config.dimension();
    const Frame frame = frame_or_computational(config);
    const auto sys = coefficients_in_frame(std::get<PureState>(config.system), frame);
    const ObserverSampler sampler(config.sampler, Model::Complex, n);
    RngStream rng(seed, 0);

    MatchReport report;
    std::vector<Complex> observer(n);
    for (std::uint64_t t = 0; t < trials; ++t) {
        sampler.draw(std::span<Complex>(observer), rng);
        const auto obs = coefficients_in_frame(observer, frame);
        const auto moduli = decide(likelihood_ratios(sys, obs, OddsScale::Moduli));
        const auto born = decide(likelihood_ratios(sys, obs, OddsScale::Born));
        ++report.trials;
        report.matches += moduli == born ? 1 : 0;
    }
    return report;
}

InvarianceReport run_invariance_suite(const ExperimentConfig& config, std::uint64_t count, std::uint64_t seed) {
    InvarianceReport r;
    r.projective = run_projective_invariance(config, count, mix_seed(seed ^ 0x1));
    r.monotone = run_monotone_invariance(config, count, mix_seed(seed ^ 0x2));
    r.unitary = run_unitary_invariance(config, count, mix_seed(seed ^ 0x3));
    return r;
}

// ---------------------------------------------------------------------------

ContextualityReport run_contextuality_demo(const MixtureState& system, const MixtureState& observer,
                                           std::size_t i, std::size_t j, std::uint64_t trials,
                                           std::uint64_t seed) {
    ContextualityReport r;
    r.before = decide(system, observer);
    r.original_outcome = r.before.outcome_index;
    if (i == r.original_outcome || j == r.original_outcome) {
        throw Error(ErrorKind::PreconditionViolated,
                    "swap indices must differ from the decided outcome (zero-based index " +
                        std::to_string(r.original_outcome) + ")");
    }
    const MixtureState swapped = swap_components(system, i, j);
    r.after = decide(swapped, observer);
    r.probability_before = eigenset_measure_mc(system, r.original_outcome, trials, mix_seed(seed));
    r.probability_after = eigenset_measure_mc(swapped, r.original_outcome, trials, mix_seed(seed + 1));
    const double diff = std::abs(r.probability_before.value - r.probability_after.value);
    const double se = std::hypot(r.probability_before.standard_error, r.probability_after.standard_error);
    r.z_difference = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    return r;
}

// ---------------------------------------------------------------------------

AlphaDiagnostic alpha_diagnostic(std::span<const double> p_sys, std::span<const double> p_obs) {
    if (p_sys.size() != p_obs.size()) throw Error(ErrorKind::DimensionMismatch, "alpha_diagnostic");
    if (p_sys.empty()) throw Error(ErrorKind::InvalidArgument, "alpha_diagnostic needs outcomes");
    double alpha = 0.0;
    double rest = 0.0;
    for (std::size_t k = 0; k < p_sys.size(); ++k) {
        if (!(p_sys[k] >= 0.0) || !(p_obs[k] >= 0.0)) {
            throw Error(ErrorKind::NegativeComponent, "probabilities must be nonnegative");
        }
        alpha += p_sys[k];
        rest += p_obs[k];
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidAlpha, "alpha = " + std::to_string(alpha));
    if (std::abs(alpha + rest - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::InvalidAlpha, "observer mass " + std::to_string(rest) + " is not 1 - alpha");
    }
    AlphaDiagnostic d;
    d.alpha = alpha;
    d.argmax = decide_index(p_sys, p_obs);
    const double num = p_sys[d.argmax];
    const double den = p_obs[d.argmax];
    d.max_odds = den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
    d.majorization_holds = compare_ratios(num, den, 1.0, 1.0) > 0;
    return d;
}

AlphaSweepReport run_alpha_sweep(std::size_t n, std::uint64_t count, double alpha_min, double alpha_max,
                                 bool proportional, std::uint64_t seed) {
    if (!(0.0 <= alpha_min && alpha_min < alpha_max && alpha_max <= 1.0)) {
        throw Error(ErrorKind::InvalidAlpha, "alpha range must satisfy 0 <= min < max <= 1");
    }
    RngStream rng(seed, 0);
    AlphaSweepReport r;
    r.count = count;
    r.alpha_min = alpha_min;
    r.alpha_max = alpha_max;
    r.smallest_max_odds = std::numeric_limits<double>::infinity();
    std::vector<double> shape_sys(n);
    std::vector<double> shape_obs(n);
    std::vector<double> p_sys(n);
    std::vector<double> p_obs(n);
    for (std::uint64_t i = 0; i < count; ++i) {
        double alpha = 0.0;
        do {
            alpha = alpha_min + (alpha_max - alpha_min) * rng.uniform();
        } while (!(alpha > alpha_min && alpha < alpha_max));
        uniform_simplex_into(shape_sys, rng);
        if (proportional) {
            shape_obs = shape_sys;
        } else {
            uniform_simplex_into(shape_obs, rng);
        }
        for (std::size_t k = 0; k < n; ++k) {
            p_sys[k] = alpha * shape_sys[k];
            p_obs[k] = (1.0 - alpha) * shape_obs[k];
        }
        const auto d = alpha_diagnostic(p_sys, p_obs);
        r.holds += d.majorization_holds ? 1 : 0;
        r.smallest_max_odds = std::min(r.smallest_max_odds, d.max_odds);
        r.largest_max_odds = std::max(r.largest_max_odds, d.max_odds);
    }
    return r;
}

}  // namespace bornforge

#include <cmath>
#include <sstream>

#include "bornforge/error.hpp"
#include "bornforge/suite.hpp"

namespace bornforge {

namespace {

struct Resolved {
    std::optional<AnyState> system;
    std::vector<PureState> components;
    std::optional<Frame> frame;
};

AnyState resolve_state(const StateSource& s, Model model, std::size_t n, RngStream& rng) {
    if (!s.random) return *s.state;
    if (model == Model::Real) return uniform_simplex(n, rng);
    return uniform_complex_sphere(n, rng);
}

/// Random inputs come from stream 0 of the experiment seed, in field order.
Resolved resolve(const ExperimentPlan& p, std::uint64_t seed) {
    RngStream setup(seed, 0);
    Resolved r;
    const Model model = p.kind == ExperimentKind::Simplex || p.kind == ExperimentKind::Contextuality ? Model::Real
                                                                                                      : Model::Complex;
    if (p.system.random || p.system.state) r.system = resolve_state(p.system, model, p.n, setup);
    for (const auto& c : p.components) r.components.push_back(std::get<PureState>(resolve_state(c, Model::Complex, p.n, setup)));
    switch (p.frame_source) {
        case FrameSource::Computational: break;
        case FrameSource::Random: r.frame = Frame::from_unitary(haar_unitary(p.n, setup)); break;
        case FrameSource::Explicit: r.frame = p.frame; break;
    }
    return r;
}

Json header(const ExperimentPlan& p, std::uint64_t seed) {
    Json j;
    j["name"] = p.name;
    j["kind"] = std::string(to_string(p.kind));
    j["seed"] = seed;
    j["n"] = p.n;
    return j;
}

ExperimentConfig base_config(const ExperimentPlan& p, const Resolved& r, std::uint64_t seed, std::size_t threads) {
    ExperimentConfig c;
    c.model = p.kind == ExperimentKind::Simplex ? Model::Real : Model::Complex;
    if (r.system) {
        c.system = *r.system;
    } else if (!r.components.empty()) {
        c.system = r.components.front();
    }
    c.frame = r.frame;
    c.sampler = p.sampler;
    c.trials = p.trials;
    c.seed = seed;
    c.checkpoints = p.checkpoints;
    c.odds = p.odds;
    c.threads = threads;
    return c;
}

std::string csv_of(const ExperimentResult& result) {
    std::ostringstream os;
    write_trace_csv(os, result);
    return os.str();
}

std::string sigma_text(double s) {
    std::ostringstream os;
    os << s;
    return os.str();
}

ExperimentOutcome run_frequency(const ExperimentPlan& p, const Resolved& r, std::uint64_t seed, std::size_t threads) {
    const auto config = base_config(p, r, seed, threads);
    const auto result = run_repeated(config);
    ExperimentOutcome out;
    out.passed = result.within_sigma(p.sigma);
    out.criterion = "every frequency within " + sigma_text(p.sigma) + " sigma of the reference";
    Json j = header(p, seed);
    j["system"] = to_json(config.system);
    if (r.frame) j["frame"] = to_json(*r.frame);
    j["sampler"] = p.sampler.kind == SamplerKind::Uniform ? "uniform" : "epsilon-concentrated";
    if (p.kind == ExperimentKind::Born) j["odds"] = p.odds == OddsScale::Moduli ? "moduli" : "born";
    j["criterion"] = out.criterion;
    j["passed"] = out.passed;
    j["result"] = to_json(result);
    out.document = std::move(j);
    out.trace_csv = csv_of(result);
    return out;
}

ExperimentOutcome run_mixture_kind(const ExperimentPlan& p, const Resolved& r, std::uint64_t seed, std::size_t threads) {
    MixtureSpec spec{r.components, MixtureState::validate(p.weights)};
    auto config = base_config(p, r, seed, threads);
    const Frame frame = r.frame ? *r.frame : Frame::computational(p.n);
    if (p.center_from_mixture) config.sampler.center = mixture_center(spec, frame);

    const bool violation = p.kind == ExperimentKind::MixtureViolation;
    const LinearityReport report =
        violation ? run_mixture_violation(spec, config.sampler, config) : run_mixture(spec, config);
    ExperimentOutcome out;
    if (violation) {
        out.passed = report.max_abs_z > p.violation_sigma;
        out.criterion = "some residual exceeds " + sigma_text(p.violation_sigma) + " sigma";
    } else {
        out.passed = report.max_abs_z <= p.sigma;
        out.criterion = "every residual within " + sigma_text(p.sigma) + " sigma of the linear prediction";
    }
    Json j = header(p, seed);
    Json comps = Json::array();
    for (const auto& c : spec.components) comps.push_back(to_json(c));
    j["components"] = std::move(comps);
    j["weights"] = to_json(spec.weights);
    if (r.frame) j["frame"] = to_json(*r.frame);
    if (config.sampler.kind == SamplerKind::Uniform) {
        j["sampler"] = "uniform";
    } else {
        Json s;
        s["kind"] = "epsilon-concentrated";
        s["center"] = to_json(*config.sampler.center);
        s["epsilon"] = config.sampler.epsilon;
        s["weight"] = config.sampler.weight;
        j["sampler"] = std::move(s);
    }
    j["criterion"] = out.criterion;
    j["passed"] = out.passed;
    j["report"] = to_json(report);
    out.document = std::move(j);
    out.trace_csv = csv_of(report.result);
    return out;
}

ExperimentOutcome run_invariance_kind(const ExperimentPlan& p, const Resolved& r, std::uint64_t seed,
                                      std::size_t threads) {
    auto config = base_config(p, r, seed, threads);
    config.trials = 1;
    const auto report = run_invariance_suite(config, p.count, seed);
    ExperimentOutcome out;
    out.passed = report.passed();
    out.criterion = "identical decisions in every paired trial";
    Json j = header(p, seed);
    j["system"] = to_json(config.system);
    if (r.frame) j["frame"] = to_json(*r.frame);
    j["criterion"] = out.criterion;
    j["passed"] = out.passed;
    j["report"] = to_json(report);
    out.document = std::move(j);
    return out;
}

ExperimentOutcome run_contextuality_kind(const ExperimentPlan& p, std::uint64_t seed) {
    const auto& system = std::get<MixtureState>(*p.system.state);
    const auto& observer = std::get<MixtureState>(*p.observer.state);
    const auto report = run_contextuality_demo(system, observer, p.swap[0], p.swap[1], p.trials, seed);
    ExperimentOutcome out;
    out.passed = report.decision_changed() && report.z_difference < p.sigma;
    out.criterion = "decision changes and the original outcome's probability moves by less than " +
                    sigma_text(p.sigma) + " sigma";
    Json j = header(p, seed);
    j["system"] = to_json(system);
    j["observer"] = to_json(observer);
    j["swap"] = Json::array({p.swap[0] + 1, p.swap[1] + 1});
    j["criterion"] = out.criterion;
    j["passed"] = out.passed;
    j["report"] = to_json(report);
    out.document = std::move(j);
    return out;
}

ExperimentOutcome run_alpha_kind(const ExperimentPlan& p, std::uint64_t seed) {
    const auto report = run_alpha_sweep(p.n, p.count, p.alpha_min, p.alpha_max, p.proportional, seed);
    ExperimentOutcome out;
    switch (p.expect) {
        case AlphaExpectation::Majorization:
            out.passed = report.holds == report.count;
            out.criterion = "majorization holds for every pair";
            break;
        case AlphaExpectation::OddsBelowOne:
            out.passed = report.largest_max_odds < 1.0;
            out.criterion = "maximal odds below one for every pair";
            break;
        case AlphaExpectation::None:
            out.passed = true;
            out.criterion = "none";
            break;
    }
    Json j = header(p, seed);
    j["proportional"] = p.proportional;
    j["criterion"] = out.criterion;
    j["passed"] = out.passed;
    j["report"] = to_json(report);
    out.document = std::move(j);
    return out;
}

}  // namespace

std::uint64_t experiment_seed(std::uint64_t suite_seed, std::size_t index) {
    return mix_seed(suite_seed + static_cast<std::uint64_t>(index));
}

ExperimentOutcome run_plan(const ExperimentPlan& plan, std::uint64_t seed, std::size_t threads) {
    const Resolved r = resolve(plan, seed);
    switch (plan.kind) {
        case ExperimentKind::Born:
        case ExperimentKind::Simplex: return run_frequency(plan, r, seed, threads);
        case ExperimentKind::Mixture:
        case ExperimentKind::MixtureViolation: return run_mixture_kind(plan, r, seed, threads);
        case ExperimentKind::Invariance: return run_invariance_kind(plan, r, seed, threads);
        case ExperimentKind::Contextuality: return run_contextuality_kind(plan, seed);
        case ExperimentKind::Alpha: return run_alpha_kind(plan, seed);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown experiment kind");
}

}  // namespace bornforge

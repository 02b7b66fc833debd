#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "bornforge/error.hpp"
#include "bornforge/experiments.hpp"
#include "bornforge/geometry.hpp"
#include "bornforge/observer.hpp"
#include "bornforge/sampling.hpp"
#include "bornforge/state_space.hpp"

namespace py = pybind11;
using namespace bornforge;

namespace {

using Reals = std::vector<double>;
using Amplitudes = std::vector<Complex>;
using FrameVectors = std::optional<std::vector<Amplitudes>>;

MixtureState mixture(const Reals& t) { return MixtureState::validate(t); }
PureState pure(const Amplitudes& q) { return PureState::validate(q); }

Reals values(const MixtureState& s) { return {s.values().begin(), s.values().end()}; }
Amplitudes values(const PureState& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

Frame frame_or_computational(const FrameVectors& f, std::size_t n) {
    return f ? Frame::from_vectors(*f) : Frame::computational(n);
}

OddsScale parse_odds(const std::string& s) {
    if (s == "moduli") return OddsScale::Moduli;
    if (s == "born") return OddsScale::Born;
    throw Error(ErrorKind::InvalidArgument, "odds must be 'moduli' or 'born'");
}

SamplerSpec sampler(const std::optional<Amplitudes>& center, double epsilon, double weight) {
    if (!center) return SamplerSpec::uniform();
    return SamplerSpec::epsilon_concentrated(pure(*center), epsilon, weight);
}

}  // namespace

PYBIND11_MODULE(_bornforge, m) {
    m.doc() = "Bayes-optimal observer simulations of the Born rule";

    py::register_exception<Error>(m, "BornforgeError", PyExc_ValueError);

    py::class_<Decision>(m, "Decision")
        .def_readonly("outcome", &Decision::outcome_index)
        .def_readonly("tied", &Decision::tied)
        .def_readonly("tied_set", &Decision::tied_set)
        .def("__repr__", [](const Decision& d) {
            return "Decision(outcome=" + std::to_string(d.outcome_index) + (d.tied ? ", tied)" : ")");
        });

    py::class_<VolumeEstimate>(m, "VolumeEstimate")
        .def_readonly("value", &VolumeEstimate::value)
        .def_readonly("standard_error", &VolumeEstimate::standard_error)
        .def_readonly("samples", &VolumeEstimate::samples);

    py::class_<TracePoint>(m, "TracePoint")
        .def_readonly("trials", &TracePoint::trials)
        .def_readonly("tv_distance", &TracePoint::tv_distance)
        .def_readonly("frequencies", &TracePoint::frequencies);

    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_property_readonly("model", [](const ExperimentResult& r) { return std::string(to_string(r.model)); })
        .def_readonly("n", &ExperimentResult::n)
        .def_readonly("trials", &ExperimentResult::trials)
        .def_readonly("counts", &ExperimentResult::counts)
        .def_readonly("frequencies", &ExperimentResult::frequencies)
        .def_readonly("reference", &ExperimentResult::reference)
        .def_readonly("ci_low", &ExperimentResult::ci_low)
        .def_readonly("ci_high", &ExperimentResult::ci_high)
        .def_readonly("ci_halfwidths", &ExperimentResult::ci_halfwidths)
        .def_readonly("trace", &ExperimentResult::trace)
        .def_readonly("tie_count", &ExperimentResult::tie_count)
        .def_readonly("outcomes", &ExperimentResult::outcomes)
        .def("sigmas", &ExperimentResult::sigmas)
        .def("z_scores", &ExperimentResult::z_scores)
        .def("within_sigma", &ExperimentResult::within_sigma, py::arg("k"));

    py::class_<LinearityReport>(m, "LinearityReport")
        .def_readonly("result", &LinearityReport::result)
        .def_readonly("residuals", &LinearityReport::residuals)
        .def_readonly("sigmas", &LinearityReport::sigmas)
        .def_readonly("z_scores", &LinearityReport::z_scores)
        .def_readonly("max_abs_z", &LinearityReport::max_abs_z)
        .def_readonly("within_4_sigma", &LinearityReport::within_4_sigma)
        .def_readonly("violation", &LinearityReport::violation);

    py::class_<MatchReport>(m, "MatchReport")
        .def_readonly("trials", &MatchReport::trials)
        .def_readonly("matches", &MatchReport::matches)
        .def_property_readonly("match_rate", &MatchReport::match_rate);

    py::class_<InvarianceReport>(m, "InvarianceReport")
        .def_readonly("projective", &InvarianceReport::projective)
        .def_readonly("monotone", &InvarianceReport::monotone)
        .def_readonly("unitary", &InvarianceReport::unitary)
        .def_property_readonly("passed", &InvarianceReport::passed);

    py::class_<ContextualityReport>(m, "ContextualityReport")
        .def_readonly("before", &ContextualityReport::before)
        .def_readonly("after", &ContextualityReport::after)
        .def_readonly("original_outcome", &ContextualityReport::original_outcome)
        .def_readonly("probability_before", &ContextualityReport::probability_before)
        .def_readonly("probability_after", &ContextualityReport::probability_after)
        .def_readonly("z_difference", &ContextualityReport::z_difference)
        .def_property_readonly("decision_changed", &ContextualityReport::decision_changed)
        .def_property_readonly("probability_agrees", &ContextualityReport::probability_agrees);

    py::class_<AlphaDiagnostic>(m, "AlphaDiagnostic")
        .def_readonly("alpha", &AlphaDiagnostic::alpha)
        .def_readonly("max_odds", &AlphaDiagnostic::max_odds)
        .def_readonly("argmax", &AlphaDiagnostic::argmax)
        .def_readonly("majorization_holds", &AlphaDiagnostic::majorization_holds);

    py::class_<AlphaSweepReport>(m, "AlphaSweepReport")
        .def_readonly("count", &AlphaSweepReport::count)
        .def_readonly("alpha_min", &AlphaSweepReport::alpha_min)
        .def_readonly("alpha_max", &AlphaSweepReport::alpha_max)
        .def_readonly("holds", &AlphaSweepReport::holds)
        .def_readonly("smallest_max_odds", &AlphaSweepReport::smallest_max_odds)
        .def_readonly("largest_max_odds", &AlphaSweepReport::largest_max_odds);

    py::class_<UniformityReport>(m, "UniformityReport")
        .def_readonly("n", &UniformityReport::n)
        .def_readonly("samples", &UniformityReport::samples)
        .def_readonly("bins", &UniformityReport::bins)
        .def_readonly("chi_square", &UniformityReport::chi_square)
        .def_readonly("dof", &UniformityReport::dof)
        .def_readonly("p_value", &UniformityReport::p_value)
        .def_readonly("ks_marginals", &UniformityReport::ks_marginals)
        .def_readonly("ks_critical", &UniformityReport::ks_critical)
        .def_property_readonly("ks_pass", &UniformityReport::ks_pass)
        .def_property_readonly("passed", [](const UniformityReport& r) { return r.passed(); });

    // States -----------------------------------------------------------------

    m.def("real_state", [](const Reals& t) { return values(mixture(t)); }, py::arg("t"),
          "Validated simplex point.");
    m.def(
        "complex_state",
        [](const Amplitudes& q, bool strict) {
            return values(PureState::validate(q, strict ? NormMode::Strict : NormMode::Renormalize));
        },
        py::arg("q"), py::arg("strict") = false, "Unit vector; rescaled unless strict.");
    m.def("omega", [](const Amplitudes& z) { return omega(z); }, py::arg("z"), "Entrywise |z_k|^2.");
    m.def(
        "born_probabilities",
        [](const Amplitudes& q, const FrameVectors& frame) {
            return values(born_probabilities(pure(q), frame_or_computational(frame, q.size())));
        },
        py::arg("q"), py::arg("frame") = py::none());
    m.def("uniform_simplex", [](std::size_t n, std::uint64_t seed) {
        RngStream rng(seed);
        return values(uniform_simplex(n, rng));
    }, py::arg("n"), py::arg("seed"));
    m.def("uniform_complex_sphere", [](std::size_t n, std::uint64_t seed) {
        RngStream rng(seed);
        return values(uniform_complex_sphere(n, rng));
    }, py::arg("n"), py::arg("seed"));

    // Observer ---------------------------------------------------------------

    m.def("likelihood_ratios", [](const Reals& t, const Reals& r) { return likelihood_ratios(t, r).ratios; },
          py::arg("system"), py::arg("observer"));
    m.def(
        "likelihood_ratios",
        [](const Amplitudes& q, const Amplitudes& r, const std::string& odds) {
            return likelihood_ratios(pure(q), pure(r), parse_odds(odds)).ratios;
        },
        py::arg("system"), py::arg("observer"), py::arg("odds") = "moduli");
    m.def("decide", [](const Reals& t, const Reals& r) { return decide(mixture(t), mixture(r)); },
          py::arg("system"), py::arg("observer"), "Zero-based outcome of the Bayes-optimal observer.");
    m.def(
        "decide",
        [](const Amplitudes& q, const Amplitudes& r, const FrameVectors& frame, const std::string& odds) {
            const auto s = pure(q);
            return decide_in_frame(s, pure(r), frame_or_computational(frame, s.size()), parse_odds(odds));
        },
        py::arg("system"), py::arg("observer"), py::arg("frame") = py::none(), py::arg("odds") = "moduli");
    m.def("swap_components", [](const Reals& t, std::size_t i, std::size_t j) {
        return values(swap_components(mixture(t), i, j));
    }, py::arg("t"), py::arg("i"), py::arg("j"));

    // Geometry ---------------------------------------------------------------

    m.def("eigenset_measure_analytic", [](const Reals& t, std::size_t k) {
        return eigenset_measure_analytic(mixture(t), k);
    }, py::arg("t"), py::arg("k"));
    m.def("simplex_volume_ratio", [](const Reals& a, std::size_t k) {
        return simplex_volume_ratio(mixture(a), k, a.size());
    }, py::arg("apex"), py::arg("k"));
    m.def(
        "eigenset_measure_mc",
        [](const Reals& t, std::size_t k, std::uint64_t samples, std::uint64_t seed) {
            py::gil_scoped_release release;
            return eigenset_measure_mc(mixture(t), k, samples, seed);
        },
        py::arg("t"), py::arg("k"), py::arg("samples"), py::arg("seed"));
    m.def(
        "eigenset_measure_mc",
        [](const Amplitudes& q, std::size_t k, std::uint64_t samples, std::uint64_t seed, const FrameVectors& frame) {
            const auto s = pure(q);
            const auto f = frame_or_computational(frame, s.size());
            py::gil_scoped_release release;
            return eigenset_measure_mc(s, f, k, samples, seed);
        },
        py::arg("q"), py::arg("k"), py::arg("samples"), py::arg("seed"), py::arg("frame") = py::none());
    m.def(
        "verify_omega_pushforward",
        [](std::size_t n, std::uint64_t samples, std::size_t bins, std::uint64_t seed) {
            py::gil_scoped_release release;
            return verify_omega_pushforward(n, samples, bins, seed);
        },
        py::arg("n"), py::arg("samples"), py::arg("bins"), py::arg("seed"));

    // Experiments ------------------------------------------------------------

    m.def(
        "run_real",
        [](const Reals& t, std::uint64_t trials, std::uint64_t seed, std::vector<std::uint64_t> checkpoints,
           bool record_outcomes, std::size_t threads) {
            auto c = real_experiment(mixture(t), trials, seed);
            c.checkpoints = std::move(checkpoints);
            c.record_outcomes = record_outcomes;
            c.threads = threads;
            py::gil_scoped_release release;
            return run_repeated(c);
        },
        py::arg("t"), py::arg("trials"), py::arg("seed") = 0, py::arg("checkpoints") = std::vector<std::uint64_t>{},
        py::arg("record_outcomes") = false, py::arg("threads") = 0,
        "Repeated measurement of a simplex state against uniformly drawn observers.");
    m.def(
        "run_complex",
        [](const Amplitudes& q, std::uint64_t trials, std::uint64_t seed, const FrameVectors& frame,
           const std::string& odds, std::vector<std::uint64_t> checkpoints, bool record_outcomes,
           std::optional<Amplitudes> center, double epsilon, double weight, std::size_t threads) {
            auto c = complex_experiment(pure(q), trials, seed);
            if (frame) c.frame = Frame::from_vectors(*frame);
            c.odds = parse_odds(odds);
            c.checkpoints = std::move(checkpoints);
            c.record_outcomes = record_outcomes;
            c.sampler = sampler(center, epsilon, weight);
            c.threads = threads;
            py::gil_scoped_release release;
            return run_repeated(c);
        },
        py::arg("q"), py::arg("trials"), py::arg("seed") = 0, py::arg("frame") = py::none(),
        py::arg("odds") = "moduli", py::arg("checkpoints") = std::vector<std::uint64_t>{},
        py::arg("record_outcomes") = false, py::arg("center") = py::none(), py::arg("epsilon") = 0.0,
        py::arg("weight") = 0.0, py::arg("threads") = 0,
        "Repeated measurement of a pure state; optional epsilon-concentrated observer prior around `center`.");
    m.def("convergence_slope", &convergence_slope, py::arg("result"), py::arg("min_trials") = 1000,
          py::arg("max_trials") = 1000000);
    m.def(
        "run_mixture",
        [](const std::vector<Amplitudes>& components, const Reals& weights, std::uint64_t trials,
           std::uint64_t seed, const FrameVectors& frame) {
            MixtureSpec spec;
            for (const auto& c : components) spec.components.push_back(pure(c));
            spec.weights = mixture(weights);
            auto c = complex_experiment(spec.components.front(), trials, seed);
            if (frame) c.frame = Frame::from_vectors(*frame);
            py::gil_scoped_release release;
            return run_mixture(spec, c);
        },
        py::arg("components"), py::arg("weights"), py::arg("trials"), py::arg("seed") = 0,
        py::arg("frame") = py::none());
    m.def(
        "run_mixture_violation",
        [](const std::vector<Amplitudes>& components, const Reals& weights, std::uint64_t trials,
           std::uint64_t seed, double epsilon, double weight) {
            MixtureSpec spec;
            for (const auto& c : components) spec.components.push_back(pure(c));
            spec.weights = mixture(weights);
            const auto centre = mixture_center(spec, Frame::computational(spec.components.front().size()));
            auto c = complex_experiment(centre, trials, seed);
            py::gil_scoped_release release;
            return run_mixture_violation(spec, SamplerSpec::epsilon_concentrated(centre, epsilon, weight), c);
        },
        py::arg("components"), py::arg("weights"), py::arg("trials"), py::arg("seed") = 0,
        py::arg("epsilon") = 0.1, py::arg("weight") = 0.9,
        "Linearity check with the observer prior concentrated around the mixture point.");
    m.def(
        "run_invariance_suite",
        [](const Amplitudes& q, std::uint64_t count, std::uint64_t seed, const FrameVectors& frame) {
            auto c = complex_experiment(pure(q), 1, seed);
            if (frame) c.frame = Frame::from_vectors(*frame);
            py::gil_scoped_release release;
            return run_invariance_suite(c, count, seed);
        },
        py::arg("q"), py::arg("count"), py::arg("seed") = 0, py::arg("frame") = py::none());
    m.def(
        "contextuality",
        [](const Reals& t, const Reals& r, std::size_t i, std::size_t j, std::uint64_t trials, std::uint64_t seed) {
            const auto s = mixture(t);
            const auto o = mixture(r);
            py::gil_scoped_release release;
            return run_contextuality_demo(s, o, i, j, trials, seed);
        },
        py::arg("system"), py::arg("observer"), py::arg("i"), py::arg("j"), py::arg("trials"), py::arg("seed") = 0,
        "Swap system components i and j (zero-based) with the observer fixed.");
    m.def("alpha_diagnostic", [](const Reals& p_sys, const Reals& p_obs) { return alpha_diagnostic(p_sys, p_obs); },
          py::arg("p_sys"), py::arg("p_obs"));
    m.def(
        "run_alpha_sweep",
        [](std::size_t n, std::uint64_t count, double alpha_min, double alpha_max, bool proportional,
           std::uint64_t seed) {
            py::gil_scoped_release release;
            return run_alpha_sweep(n, count, alpha_min, alpha_max, proportional, seed);
        },
        py::arg("n"), py::arg("count"), py::arg("alpha_min"), py::arg("alpha_max"), py::arg("proportional") = false,
        py::arg("seed") = 0);
}

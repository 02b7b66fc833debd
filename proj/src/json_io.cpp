#include "bornforge/json_io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "bornforge/error.hpp"

namespace bornforge {

namespace {

double number_at(const Json& j, const std::string& where) {
    if (!j.is_number()) throw Error(ErrorKind::InvalidArgument, where + " must be a number");
    return j.get<double>();
}

Complex complex_at(const Json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) {
        return {number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]")};
    }
    throw Error(ErrorKind::InvalidArgument, where + " must be [re, im] or a number");
}

std::vector<Complex> complex_vector(const Json& j, const std::string& what) {
    if (!j.is_array()) throw Error(ErrorKind::InvalidArgument, what + " must be an array");
    std::vector<Complex> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(complex_at(j[i], what + "[" + std::to_string(i) + "]"));
    return v;
}

Json complex_list(std::span<const Complex> v) {
    Json a = Json::array();
    for (const auto& z : v) a.push_back(Json::array({z.real(), z.imag()}));
    return a;
}

template <class T>
Json list(const std::vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x);
    return a;
}

Json list(std::span<const double> v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

Json one_based(const std::vector<std::size_t>& v) {
    Json a = Json::array();
    for (auto x : v) a.push_back(x + 1);
    return a;
}

}  // namespace

MixtureState real_state_from_json(const Json& j) {
    if (!j.is_array()) throw Error(ErrorKind::InvalidArgument, "real state must be an array of numbers");
    std::vector<double> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number_at(j[i], "state[" + std::to_string(i) + "]"));
    return MixtureState::validate(v);
}

PureState complex_state_from_json(const Json& j, NormMode mode) {
    return PureState::validate(complex_vector(j, "state"), mode);
}

Frame frame_from_json(const Json& j) {
    if (!j.is_array()) throw Error(ErrorKind::InvalidArgument, "frame must be an array of vectors");
    std::vector<std::vector<Complex>> basis;
    for (std::size_t i = 0; i < j.size(); ++i) basis.push_back(complex_vector(j[i], "frame[" + std::to_string(i) + "]"));
    return Frame::from_vectors(basis);
}

Json to_json(const MixtureState& s) { return list(s.values()); }

Json to_json(const PureState& s) { return complex_list(s.amplitudes()); }

Json to_json(const AnyState& s) {
    return std::visit([](const auto& v) { return to_json(v); }, s);
}

Json to_json(const Frame& f) {
    Json a = Json::array();
    for (std::size_t i = 0; i < f.size(); ++i) a.push_back(complex_list(f.vector(i)));
    return a;
}

Json to_json(const Decision& d) {
    Json j;
    j["outcome"] = d.outcome_index + 1;
    j["tied"] = d.tied;
    j["tied_set"] = one_based(d.tied_set);
    return j;
}

Json to_json(const VolumeEstimate& v) {
    Json j;
    j["value"] = v.value;
    j["standard_error"] = v.standard_error;
    j["samples"] = v.samples;
    return j;
}

Json to_json(const ExperimentResult& r) {
    Json j;
    j["model"] = std::string(to_string(r.model));
    j["n"] = r.n;
    j["trials"] = r.trials;
    j["counts"] = list(r.counts);
    j["frequencies"] = list(r.frequencies);
    j["reference"] = list(r.reference);
    j["sigmas"] = list(r.sigmas());
    j["z_scores"] = list(r.z_scores());
    j["ci_low"] = list(r.ci_low);
    j["ci_high"] = list(r.ci_high);
    j["ci_halfwidths"] = list(r.ci_halfwidths);
    j["tie_count"] = r.tie_count;
    Json trace = Json::array();
    for (const auto& p : r.trace) {
        Json t;
        t["trials"] = p.trials;
        t["tv_distance"] = p.tv_distance;
        t["frequencies"] = list(p.frequencies);
        trace.push_back(std::move(t));
    }
    j["trace"] = std::move(trace);
    if (!r.outcomes.empty()) {
        Json o = Json::array();
        for (auto k : r.outcomes) o.push_back(k + 1);
        j["outcomes"] = std::move(o);
    }
    return j;
}

Json to_json(const LinearityReport& r) {
    Json j;
    j["prediction"] = list(r.result.reference);
    j["residuals"] = list(r.residuals);
    j["sigmas"] = list(r.sigmas);
    j["z_scores"] = list(r.z_scores);
    j["max_abs_z"] = r.max_abs_z;
    j["within_4_sigma"] = r.within_4_sigma;
    j["violation"] = r.violation;
    j["result"] = to_json(r.result);
    return j;
}

Json to_json(const MatchReport& r) {
    Json j;
    j["trials"] = r.trials;
    j["matches"] = r.matches;
    j["match_rate"] = r.match_rate();
    return j;
}

Json to_json(const InvarianceReport& r) {
    Json j;
    j["projective"] = to_json(r.projective);
    j["monotone"] = to_json(r.monotone);
    j["unitary"] = to_json(r.unitary);
    j["passed"] = r.passed();
    return j;
}

Json to_json(const ContextualityReport& r) {
    Json j;
    j["original_outcome"] = r.original_outcome + 1;
    j["before"] = to_json(r.before);
    j["after"] = to_json(r.after);
    j["decision_changed"] = r.decision_changed();
    j["probability_before"] = to_json(r.probability_before);
    j["probability_after"] = to_json(r.probability_after);
    j["z_difference"] = r.z_difference;
    j["probability_agrees"] = r.probability_agrees();
    return j;
}

Json to_json(const AlphaSweepReport& r) {
    Json j;
    j["count"] = r.count;
    j["alpha_min"] = r.alpha_min;
    j["alpha_max"] = r.alpha_max;
    j["majorization_holds"] = r.holds;
    j["smallest_max_odds"] = r.smallest_max_odds;
    j["largest_max_odds"] = r.largest_max_odds;
    return j;
}

Json to_json(const UniformityReport& r) {
    Json j;
    j["n"] = r.n;
    j["samples"] = r.samples;
    j["bins"] = r.bins;
    j["chi_square"] = r.chi_square;
    j["dof"] = r.dof;
    j["p_value"] = r.p_value;
    j["ks_marginals"] = list(r.ks_marginals);
    j["ks_critical"] = r.ks_critical;
    j["ks_pass"] = r.ks_pass();
    j["passed"] = r.passed();
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& os, const ExperimentResult& r) {
    os << "trial_count,tv_distance";
    for (std::size_t k = 0; k < r.n; ++k) os << ",freq_" << (k + 1);
    os << '\n';
    for (const auto& p : r.trace) {
        os << p.trials << ',' << format_double(p.tv_distance);
        for (double f : p.frequencies) os << ',' << format_double(f);
        os << '\n';
    }
}

}  // namespace bornforge

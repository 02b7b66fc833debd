#include <fstream>
#include <set>
#include <sstream>

#include "toml.hpp"

#include "bornforge/error.hpp"
#include "bornforge/suite.hpp"

namespace bornforge {

namespace {

using LineMap = std::map<std::string, std::size_t>;

std::string child_path(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

std::string index_path(const std::string& parent, std::size_t i) {
    return parent + "[" + std::to_string(i) + "]";
}

Json from_toml(const toml::node& node, const std::string& path, LineMap& lines) {
    if (node.source().begin.line > 0) lines[path] = node.source().begin.line;
    if (const auto* t = node.as_table()) {
        Json j = Json::object();
        for (const auto& [key, value] : *t) {
            const std::string k(key.str());
            j[k] = from_toml(value, child_path(path, k), lines);
        }
        return j;
    }
    if (const auto* a = node.as_array()) {
        Json j = Json::array();
        for (std::size_t i = 0; i < a->size(); ++i) j.push_back(from_toml((*a)[i], index_path(path, i), lines));
        return j;
    }
    if (const auto* v = node.as_integer()) return v->get();
    if (const auto* v = node.as_floating_point()) return v->get();
    if (const auto* v = node.as_boolean()) return v->get();
    if (const auto* v = node.as_string()) return v->get();
    return Json::object({{"unsupported TOML value", true}});  // dates and times fail type checks later
}

class Reader {
public:
    Reader(std::string origin, LineMap lines) : origin_(std::move(origin)), lines_(std::move(lines)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        std::string where = origin_;
        // Fall back to the closest enclosing field that has a known line.
        std::string probe = path;
        while (true) {
            if (auto it = lines_.find(probe); it != lines_.end()) {
                where += ":" + std::to_string(it->second);
                break;
            }
            const auto cut = probe.find_last_of(".[");
            if (cut == std::string::npos) break;
            probe.resize(cut);
        }
        throw Error(ErrorKind::ConfigError, where + ": " + (path.empty() ? "<root>" : path) + ": " + message);
    }

    void only_keys(const Json& obj, const std::string& path, const std::set<std::string>& allowed) const {
        for (const auto& [key, value] : obj.items()) {
            if (!allowed.count(key)) fail(child_path(path, key), "unknown field");
        }
    }

    const Json* find(const Json& obj, const std::string& key) const {
        const auto it = obj.find(key);
        return it == obj.end() ? nullptr : &*it;
    }

    const Json& need(const Json& obj, const std::string& path, const std::string& key) const {
        const Json* v = find(obj, key);
        if (!v) fail(child_path(path, key), "required field is missing");
        return *v;
    }

    std::uint64_t uint(const Json& v, const std::string& path, std::uint64_t min = 0) const {
        if (!v.is_number_integer()) fail(path, "expected an integer");
        if (v.is_number_unsigned()) {
            const auto x = v.get<std::uint64_t>();
            if (x < min) fail(path, "must be at least " + std::to_string(min));
            return x;
        }
        const auto x = v.get<std::int64_t>();
        if (x < 0 || static_cast<std::uint64_t>(x) < min) fail(path, "must be at least " + std::to_string(min));
        return static_cast<std::uint64_t>(x);
    }

    std::uint64_t uint_or(const Json& obj, const std::string& path, const std::string& key, std::uint64_t fallback,
                          std::uint64_t min = 0) const {
        const Json* v = find(obj, key);
        return v ? uint(*v, child_path(path, key), min) : fallback;
    }

    double real(const Json& v, const std::string& path) const {
        if (!v.is_number()) fail(path, "expected a number");
        return v.get<double>();
    }

    double real_or(const Json& obj, const std::string& path, const std::string& key, double fallback) const {
        const Json* v = find(obj, key);
        return v ? real(*v, child_path(path, key)) : fallback;
    }

    bool boolean_or(const Json& obj, const std::string& path, const std::string& key, bool fallback) const {
        const Json* v = find(obj, key);
        if (!v) return fallback;
        if (!v->is_boolean()) fail(child_path(path, key), "expected true or false");
        return v->get<bool>();
    }

    std::string string(const Json& v, const std::string& path) const {
        if (!v.is_string()) fail(path, "expected a string");
        return v.get<std::string>();
    }

    template <class F>
    auto guarded(const std::string& path, F&& f) const {
        try {
            return f();
        } catch (const Error& e) {
            fail(path, std::string(e.what()));
        }
    }

private:
    std::string origin_;
    LineMap lines_;
};

bool is_random(const Json& v) { return v.is_string() && v.get<std::string>() == "random"; }

StateSource read_state(const Reader& r, const Json& v, const std::string& path, Model model) {
    StateSource s;
    if (is_random(v)) {
        s.random = true;
        return s;
    }
    if (v.is_string()) r.fail(path, "expected a state vector or \"random\"");
    s.state = r.guarded(path, [&]() -> AnyState {
        if (model == Model::Real) return real_state_from_json(v);
        return complex_state_from_json(v);
    });
    return s;
}

std::size_t state_size(const StateSource& s) {
    return s.state ? std::visit([](const auto& x) { return x.size(); }, *s.state) : 0;
}

/// Reconciles an explicit `n` with the sizes of every inline state.
std::size_t resolve_n(const Reader& r, const Json& obj, const std::string& path,
                      const std::vector<std::pair<std::string, const StateSource*>>& states) {
    std::size_t n = 0;
    if (const Json* v = r.find(obj, "n")) n = r.uint(*v, child_path(path, "n"), 2);
    for (const auto& [field, s] : states) {
        const std::size_t m = state_size(*s);
        if (m == 0) continue;
        if (n == 0) n = m;
        if (m != n) r.fail(child_path(path, field), "dimension " + std::to_string(m) + " does not match n = " + std::to_string(n));
    }
    if (n == 0) r.fail(child_path(path, "n"), "required when no state is given inline");
    if (n > 65535) r.fail(child_path(path, "n"), "too many outcomes");
    return n;
}

SamplerSpec read_sampler(const Reader& r, const Json& v, const std::string& path, Model model, bool& from_mixture,
                         bool allow_mixture_center) {
    if (!v.is_object()) r.fail(path, "expected a table with a `kind` field");
    r.only_keys(v, path, {"kind", "center", "epsilon", "weight"});
    const std::string kind = r.string(r.need(v, path, "kind"), child_path(path, "kind"));
    if (kind == "uniform") {
        for (const char* k : {"center", "epsilon", "weight"}) {
            if (r.find(v, k)) r.fail(child_path(path, k), "not used by the uniform sampler");
        }
        return SamplerSpec::uniform();
    }
    if (kind != "epsilon-concentrated" && kind != "epsilon_concentrated") {
        r.fail(child_path(path, "kind"), "unknown sampler '" + kind + "' (uniform, epsilon-concentrated)");
    }
    SamplerSpec s;
    s.kind = SamplerKind::EpsilonConcentrated;
    s.epsilon = r.real(r.need(v, path, "epsilon"), child_path(path, "epsilon"));
    s.weight = r.real(r.need(v, path, "weight"), child_path(path, "weight"));
    if (!(s.epsilon > 0.0)) r.fail(child_path(path, "epsilon"), "must be positive");
    if (!(s.weight >= 0.0 && s.weight <= 1.0)) r.fail(child_path(path, "weight"), "must lie in [0, 1]");
    const Json* c = r.find(v, "center");
    if (!c || (c->is_string() && c->get<std::string>() == "mixture")) {
        if (!allow_mixture_center) r.fail(child_path(path, "center"), "required for this experiment kind");
        from_mixture = true;
        return s;
    }
    const auto center = read_state(r, *c, child_path(path, "center"), model);
    if (center.random) r.fail(child_path(path, "center"), "must be given inline");
    s.center = center.state;
    return s;
}

void read_frame(const Reader& r, const Json& obj, const std::string& path, ExperimentPlan& p) {
    const Json* v = r.find(obj, "frame");
    if (!v) return;
    const std::string fp = child_path(path, "frame");
    if (v->is_string()) {
        const auto s = v->get<std::string>();
        if (s == "computational") return;
        if (s == "random") {
            p.frame_source = FrameSource::Random;
            return;
        }
        r.fail(fp, "expected \"computational\", \"random\" or a list of basis vectors");
    }
    p.frame = r.guarded(fp, [&] { return frame_from_json(*v); });
    p.frame_source = FrameSource::Explicit;
}

OddsScale read_odds(const Reader& r, const Json& obj, const std::string& path) {
    const Json* v = r.find(obj, "odds");
    if (!v) return OddsScale::Moduli;
    const auto s = r.string(*v, child_path(path, "odds"));
    if (s == "moduli") return OddsScale::Moduli;
    if (s == "born") return OddsScale::Born;
    r.fail(child_path(path, "odds"), "expected \"moduli\" or \"born\"");
}

std::vector<std::uint64_t> read_checkpoints(const Reader& r, const Json& obj, const std::string& path,
                                            std::uint64_t trials) {
    const Json* v = r.find(obj, "checkpoints");
    if (!v) return {};
    const std::string cp = child_path(path, "checkpoints");
    if (!v->is_array() || v->empty()) r.fail(cp, "expected a nonempty array of trial counts");
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
        const auto c = r.uint((*v)[i], index_path(cp, i), 1);
        if (c > trials) r.fail(index_path(cp, i), "exceeds trials");
        if (!out.empty() && c <= out.back()) r.fail(index_path(cp, i), "checkpoints must increase");
        out.push_back(c);
    }
    return out;
}

void read_mixture(const Reader& r, const Json& e, const std::string& path, ExperimentPlan& p) {
    const Json& comps = r.need(e, path, "components");
    const std::string cp = child_path(path, "components");
    if (is_random(comps)) {
        p.components.assign(2, StateSource{true, std::nullopt});
    } else {
        if (!comps.is_array() || comps.size() < 2) r.fail(cp, "expected \"random\" or a list of at least two states");
        for (std::size_t i = 0; i < comps.size(); ++i) {
            p.components.push_back(read_state(r, comps[i], index_path(cp, i), Model::Complex));
        }
    }
    const Json* xi = r.find(e, "xi");
    const Json* w = r.find(e, "weights");
    if (xi && w) r.fail(child_path(path, "xi"), "give either xi or weights, not both");
    if (xi) {
        if (p.components.size() != 2) r.fail(child_path(path, "xi"), "xi needs exactly two components");
        const double x = r.real(*xi, child_path(path, "xi"));
        if (!(x >= 0.0 && x <= 1.0)) r.fail(child_path(path, "xi"), "must lie in [0, 1]");
        p.weights = {x, 1.0 - x};
    } else if (w) {
        const std::string wp = child_path(path, "weights");
        if (!w->is_array() || w->size() != p.components.size()) r.fail(wp, "one weight per component is required");
        for (std::size_t i = 0; i < w->size(); ++i) p.weights.push_back(r.real((*w)[i], index_path(wp, i)));
        r.guarded(wp, [&] { return MixtureState::validate(p.weights); });
    } else {
        r.fail(child_path(path, "xi"), "mixture weights are missing (xi or weights)");
    }
    std::vector<std::pair<std::string, const StateSource*>> sized;
    for (std::size_t i = 0; i < p.components.size(); ++i) sized.emplace_back(index_path("components", i), &p.components[i]);
    p.n = resolve_n(r, e, path, sized);
}

ExperimentPlan read_experiment(const Reader& r, const Json& e, const std::string& path, std::size_t index) {
    if (!e.is_object()) r.fail(path, "expected a table");
    ExperimentPlan p;
    const std::string kind = r.string(r.need(e, path, "kind"), child_path(path, "kind"));
    const auto parsed = parse_experiment_kind(kind);
    if (!parsed) {
        r.fail(child_path(path, "kind"),
               "unknown experiment kind '" + kind +
                   "' (born, simplex, mixture, mixture-violation, invariance, contextuality, alpha)");
    }
    p.kind = *parsed;
    p.name = std::string(to_string(p.kind)) + "-" + std::to_string(index + 1);
    if (const Json* v = r.find(e, "name")) {
        p.name = r.string(*v, child_path(path, "name"));
        if (p.name.empty() || p.name.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789._-") != std::string::npos ||
            p.name.front() == '.') {
            r.fail(child_path(path, "name"), "names may use letters, digits, '.', '_' and '-' only");
        }
    }
    if (const Json* v = r.find(e, "seed")) p.seed = r.uint(*v, child_path(path, "seed"));

    const std::set<std::string> common{"kind", "name", "seed"};
    auto allow = [&](std::set<std::string> extra) {
        extra.insert(common.begin(), common.end());
        r.only_keys(e, path, extra);
    };

    switch (p.kind) {
        case ExperimentKind::Born:
        case ExperimentKind::Simplex: {
            const bool born = p.kind == ExperimentKind::Born;
            const Model model = born ? Model::Complex : Model::Real;
            if (born) {
                allow({"n", "state", "trials", "sigma", "sampler", "odds", "frame", "checkpoints"});
            } else {
                allow({"n", "state", "trials", "sigma", "sampler", "checkpoints"});
            }
            p.system = read_state(r, r.need(e, path, "state"), child_path(path, "state"), model);
            p.trials = r.uint(r.need(e, path, "trials"), child_path(path, "trials"), 1);
            p.sigma = r.real_or(e, path, "sigma", 4.0);
            if (const Json* s = r.find(e, "sampler")) {
                p.sampler = read_sampler(r, *s, child_path(path, "sampler"), model, p.center_from_mixture, false);
            }
            if (born) {
                p.odds = read_odds(r, e, path);
                read_frame(r, e, path, p);
            }
            p.checkpoints = read_checkpoints(r, e, path, p.trials);
            StateSource center{false, p.sampler.center};
            p.n = resolve_n(r, e, path, {{"state", &p.system}, {"sampler.center", &center}});
            break;
        }
        case ExperimentKind::Mixture:
        case ExperimentKind::MixtureViolation: {
            const bool violation = p.kind == ExperimentKind::MixtureViolation;
            allow({"n", "components", "xi", "weights", "trials", violation ? "violation_sigma" : "sigma", "sampler",
                   "odds", "frame", "checkpoints"});
            read_mixture(r, e, path, p);
            p.trials = r.uint(r.need(e, path, "trials"), child_path(path, "trials"), 1);
            if (violation) {
                p.violation_sigma = r.real_or(e, path, "violation_sigma", 5.0);
                p.sampler.kind = SamplerKind::EpsilonConcentrated;
                p.sampler.epsilon = 0.1;
                p.sampler.weight = 0.9;
                p.center_from_mixture = true;
            } else {
                p.sigma = r.real_or(e, path, "sigma", 4.0);
            }
            if (const Json* s = r.find(e, "sampler")) {
                p.center_from_mixture = false;
                p.sampler = read_sampler(r, *s, child_path(path, "sampler"), Model::Complex, p.center_from_mixture, true);
                if (violation && p.sampler.kind != SamplerKind::EpsilonConcentrated) {
                    r.fail(child_path(path, "sampler.kind"), "mixture-violation needs an epsilon-concentrated sampler");
                }
            }
            if (p.sampler.center) {
                const auto m = std::visit([](const auto& x) { return x.size(); }, *p.sampler.center);
                if (m != p.n) r.fail(child_path(path, "sampler.center"), "dimension does not match the components");
            }
            p.odds = read_odds(r, e, path);
            read_frame(r, e, path, p);
            p.checkpoints = read_checkpoints(r, e, path, p.trials);
            break;
        }
        case ExperimentKind::Invariance: {
            allow({"n", "state", "count", "frame", "sampler"});
            p.system = read_state(r, r.need(e, path, "state"), child_path(path, "state"), Model::Complex);
            p.count = r.uint_or(e, path, "count", 10000, 1);
            if (const Json* s = r.find(e, "sampler")) {
                p.sampler = read_sampler(r, *s, child_path(path, "sampler"), Model::Complex, p.center_from_mixture, false);
            }
            read_frame(r, e, path, p);
            StateSource center{false, p.sampler.center};
            p.n = resolve_n(r, e, path, {{"state", &p.system}, {"sampler.center", &center}});
            break;
        }
        case ExperimentKind::Contextuality: {
            allow({"system", "observer", "swap", "trials", "sigma"});
            p.system = read_state(r, r.need(e, path, "system"), child_path(path, "system"), Model::Real);
            p.observer = read_state(r, r.need(e, path, "observer"), child_path(path, "observer"), Model::Real);
            if (p.system.random) r.fail(child_path(path, "system"), "must be given inline");
            if (p.observer.random) r.fail(child_path(path, "observer"), "must be given inline");
            p.n = resolve_n(r, e, path, {{"system", &p.system}, {"observer", &p.observer}});
            const Json& sw = r.need(e, path, "swap");
            const std::string sp = child_path(path, "swap");
            if (!sw.is_array() || sw.size() != 2) r.fail(sp, "expected two one-based outcome indices");
            for (std::size_t i = 0; i < 2; ++i) {
                const auto v = r.uint(sw[i], index_path(sp, i), 1);
                if (v > p.n) r.fail(index_path(sp, i), "outcome index exceeds n = " + std::to_string(p.n));
                p.swap[i] = static_cast<std::size_t>(v - 1);
            }
            if (p.swap[0] == p.swap[1]) r.fail(sp, "the two indices must differ");
            p.trials = r.uint(r.need(e, path, "trials"), child_path(path, "trials"), 1);
            p.sigma = r.real_or(e, path, "sigma", 4.0);
            break;
        }
        case ExperimentKind::Alpha: {
            allow({"n", "count", "alpha_min", "alpha_max", "proportional", "expect"});
            p.n = static_cast<std::size_t>(r.uint(r.need(e, path, "n"), child_path(path, "n"), 2));
            p.count = r.uint(r.need(e, path, "count"), child_path(path, "count"), 1);
            p.alpha_min = r.real_or(e, path, "alpha_min", 0.0);
            p.alpha_max = r.real_or(e, path, "alpha_max", 1.0);
            if (!(0.0 <= p.alpha_min && p.alpha_min < p.alpha_max && p.alpha_max <= 1.0)) {
                r.fail(child_path(path, "alpha_max"), "need 0 <= alpha_min < alpha_max <= 1");
            }
            p.proportional = r.boolean_or(e, path, "proportional", false);
            if (p.alpha_min >= 0.5) {
                p.expect = AlphaExpectation::Majorization;
            } else if (p.proportional && p.alpha_max <= 0.5) {
                p.expect = AlphaExpectation::OddsBelowOne;
            }
            if (const Json* v = r.find(e, "expect")) {
                const auto s = r.string(*v, child_path(path, "expect"));
                if (s == "majorization") {
                    p.expect = AlphaExpectation::Majorization;
                } else if (s == "odds-below-one") {
                    p.expect = AlphaExpectation::OddsBelowOne;
                } else if (s == "none") {
                    p.expect = AlphaExpectation::None;
                } else {
                    r.fail(child_path(path, "expect"), "expected \"majorization\", \"odds-below-one\" or \"none\"");
                }
            }
            break;
        }
    }
    return p;
}

SuiteConfig read_suite(const Reader& r, const Json& root) {
    if (!root.is_object()) r.fail("", "expected a table at the top level");
    r.only_keys(root, "", {"seed", "threads", "experiments", "description"});
    SuiteConfig cfg;
    cfg.echo = root;
    if (const Json* v = r.find(root, "seed")) cfg.seed = r.uint(*v, "seed");
    cfg.threads = static_cast<std::size_t>(r.uint_or(root, "", "threads", 0));
    const Json& exps = r.need(root, "", "experiments");
    if (!exps.is_array() || exps.empty()) r.fail("experiments", "expected a nonempty list of experiments");
    std::set<std::string> names;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        auto plan = read_experiment(r, exps[i], index_path("experiments", i), i);
        if (!names.insert(plan.name).second) {
            r.fail(index_path("experiments", i) + ".name", "duplicate experiment name '" + plan.name + "'");
        }
        cfg.experiments.push_back(std::move(plan));
    }
    return cfg;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Born: return "born";
        case ExperimentKind::Simplex: return "simplex";
        case ExperimentKind::Mixture: return "mixture";
        case ExperimentKind::MixtureViolation: return "mixture-violation";
        case ExperimentKind::Invariance: return "invariance";
        case ExperimentKind::Contextuality: return "contextuality";
        case ExperimentKind::Alpha: return "alpha";
    }
    return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view s) {
    for (auto k : {ExperimentKind::Born, ExperimentKind::Simplex, ExperimentKind::Mixture,
                   ExperimentKind::MixtureViolation, ExperimentKind::Invariance, ExperimentKind::Contextuality,
                   ExperimentKind::Alpha}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

SuiteConfig parse_suite(std::string_view text, bool toml, const std::string& origin) {
    Json root;
    LineMap lines;
    if (toml) {
        try {
            const toml::table t = toml::parse(text, origin);
            root = from_toml(t, "", lines);
        } catch (const toml::parse_error& e) {
            const auto& b = e.source().begin;
            throw Error(ErrorKind::ConfigError, origin + ":" + std::to_string(b.line) + ":" + std::to_string(b.column) +
                                                    ": TOML syntax error: " + std::string(e.description()));
        }
    } else {
        try {
            root = Json::parse(text);
        } catch (const Json::parse_error& e) {
            const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
            throw Error(ErrorKind::ConfigError,
                        origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error: " + e.what());
        }
    }
    return read_suite(Reader(origin, std::move(lines)), root);
}

SuiteConfig load_suite(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ConfigError, path.string() + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const auto ext = path.extension().string();
    bool toml = true;
    if (ext == ".json") {
        toml = false;
    } else if (ext != ".toml") {
        const auto first = text.find_first_not_of(" \t\r\n");
        toml = first == std::string::npos || text[first] != '{';
    }
    return parse_suite(text, toml, path.string());
}

}  // namespace bornforge

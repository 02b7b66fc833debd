#include "bornforge/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "bornforge/error.hpp"
#include "bornforge/geometry.hpp"
#include "bornforge/json_io.hpp"
#include "bornforge/suite.hpp"

#ifndef BORNFORGE_VERSION
#define BORNFORGE_VERSION "0.0.0"
#endif

namespace bornforge {

namespace fs = std::filesystem;

namespace {

struct FrequencyFlags {
    std::size_t n = 0;
    std::string state;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string out;
    double sigma = 4.0;
    std::string odds = "moduli";
    std::size_t threads = 0;
};

struct OmegaFlags {
    std::size_t n = 0;
    std::uint64_t samples = 0;
    std::size_t bins = 0;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
};

struct SuiteFlags {
    std::string config;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
};

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    f << text;
    if (!f) throw Error(ErrorKind::InvalidArgument, "failed writing " + path.string());
}

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::InvalidArgument, "cannot create " + dir.string() + ": " + ec.message());
}

int cmd_frequency(const FrequencyFlags& f, ExperimentKind kind, std::ostream& out, std::ostream& err) {
    const bool born = kind == ExperimentKind::Born;
    if (f.trials < 1) {
        err << "error: --trials must be at least 1\n";
        return kExitInputError;
    }
    ExperimentPlan plan;
    plan.kind = kind;
    plan.name = std::string(to_string(kind));
    plan.trials = f.trials;
    plan.sigma = f.sigma;
    if (f.odds == "born") {
        plan.odds = OddsScale::Born;
    } else if (f.odds != "moduli") {
        err << "error: --odds must be moduli or born\n";
        return kExitInputError;
    }
    try {
        if (f.state == "random") {
            if (f.n < 2) {
                err << "error: --n (at least 2) is required with --state random\n";
                return kExitInputError;
            }
            plan.system.random = true;
            plan.n = f.n;
        } else {
            const Json j = Json::parse(f.state);
            plan.system.state = born ? AnyState(complex_state_from_json(j)) : AnyState(real_state_from_json(j));
            plan.n = std::visit([](const auto& s) { return s.size(); }, *plan.system.state);
            if (f.n != 0 && f.n != plan.n) {
                err << "error: --n " << f.n << " does not match the state dimension " << plan.n << "\n";
                return kExitInputError;
            }
        }
    } catch (const Json::exception& e) {
        err << "error: --state is not valid JSON: " << e.what() << "\n";
        return kExitInputError;
    }

    const auto outcome = run_plan(plan, f.seed, f.threads);
    if (f.out.empty()) {
        out << dump(outcome.document);
    } else {
        const fs::path dir(f.out);
        make_dir(dir);
        const auto json_path = dir / (plan.name + ".json");
        const auto csv_path = dir / (plan.name + "_trace.csv");
        write_file(json_path, dump(outcome.document));
        write_file(csv_path, *outcome.trace_csv);
        out << (outcome.passed ? "PASS" : "FAIL") << ' ' << json_path.string() << ' ' << csv_path.string() << '\n';
    }
    return outcome.passed ? kExitPass : kExitStatFail;
}

int cmd_omega(const OmegaFlags& f, std::ostream& out) {
    const auto report = verify_omega_pushforward(f.n, f.samples, f.bins, f.seed, f.threads);
    out << dump(to_json(report));
    return report.passed() ? kExitPass : kExitStatFail;
}

int cmd_suite(const SuiteFlags& f, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const SuiteConfig cfg = load_suite(f.config);
    const std::uint64_t seed = f.seed ? *f.seed : cfg.seed.value_or(0);
    const std::size_t threads = f.threads ? *f.threads : cfg.threads;
    const fs::path dir(f.out_dir);
    make_dir(dir);

    Json entries = Json::array();
    bool all_passed = true;
    for (std::size_t i = 0; i < cfg.experiments.size(); ++i) {
        const auto& plan = cfg.experiments[i];
        const std::uint64_t s = plan.seed ? *plan.seed : experiment_seed(seed, i);
        const auto outcome = run_plan(plan, s, threads);
        const std::string result_file = plan.name + ".json";
        write_file(dir / result_file, dump(outcome.document));
        Json e;
        e["name"] = plan.name;
        e["kind"] = std::string(to_string(plan.kind));
        e["seed"] = s;
        e["passed"] = outcome.passed;
        e["result"] = result_file;
        if (outcome.trace_csv) {
            const std::string trace_file = plan.name + "_trace.csv";
            write_file(dir / trace_file, *outcome.trace_csv);
            e["trace"] = trace_file;
        }
        entries.push_back(std::move(e));
        all_passed = all_passed && outcome.passed;
        out << (outcome.passed ? "PASS " : "FAIL ") << plan.name << " (" << outcome.criterion << ")\n";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Json manifest;
    manifest["tool"] = "bornforge";
    manifest["version"] = BORNFORGE_VERSION;
    manifest["seed"] = seed;
    manifest["config_path"] = f.config;
    manifest["config"] = cfg.echo;
    manifest["duration_seconds"] = seconds;
    manifest["passed"] = all_passed;
    manifest["experiments"] = std::move(entries);
    write_file(dir / "manifest.json", dump(manifest));
    return all_passed ? kExitPass : kExitStatFail;
}

void add_frequency_flags(CLI::App* sub, FrequencyFlags& f, bool born) {
    sub->add_option("--n", f.n, "Number of outcomes (needed with --state random)");
    sub->add_option("--state", f.state,
                    born ? "System state as JSON [[re,im],...] or \"random\"" : "System state as JSON [t1,...] or \"random\"")
        ->required();
    sub->add_option("--trials", f.trials, "Number of trials")->required();
    sub->add_option("--seed", f.seed, "Run seed");
    sub->add_option("--out", f.out, "Directory for the result JSON and trace CSV (stdout when omitted)");
    sub->add_option("--sigma", f.sigma, "Pass band in standard errors");
    if (born) sub->add_option("--odds", f.odds, "Odds compared: moduli or born");
    sub->add_option("--threads", f.threads, "Worker threads (0 = BORNFORGE_THREADS or all cores)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo checks of outcome statistics for Bayes-optimal observers", "bornforge"};
    app.set_version_flag("--version", BORNFORGE_VERSION);
    app.require_subcommand(1);

    FrequencyFlags born_flags;
    auto* born = app.add_subcommand("born", "Complex model: frequencies against |<x_k, psi>|^2");
    add_frequency_flags(born, born_flags, true);

    FrequencyFlags simplex_flags;
    auto* simplex = app.add_subcommand("simplex", "Real model: frequencies against the system coordinates");
    add_frequency_flags(simplex, simplex_flags, false);

    OmegaFlags omega_flags;
    auto* omega = app.add_subcommand("omega-check", "Test that |z|^2 maps the uniform sphere to the flat simplex");
    omega->add_option("--n", omega_flags.n, "Dimension")->required();
    omega->add_option("--samples", omega_flags.samples, "Sphere samples")->required();
    omega->add_option("--bins", omega_flags.bins, "Equal-measure cells")->required();
    omega->add_option("--seed", omega_flags.seed, "Run seed");
    omega->add_option("--threads", omega_flags.threads, "Worker threads");

    SuiteFlags suite_flags;
    auto* suite = app.add_subcommand("suite", "Run every experiment of a TOML or JSON config");
    suite->add_option("--config", suite_flags.config, "Config file")->required()->check(CLI::ExistingFile);
    suite->add_option("--out-dir", suite_flags.out_dir, "Output directory")->required();
    suite->add_option("--seed", suite_flags.seed, "Suite seed (overrides the config)");
    suite->add_option("--threads", suite_flags.threads, "Worker threads (overrides the config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitInputError;
    }

    try {
        if (*born) return cmd_frequency(born_flags, ExperimentKind::Born, out, err);
        if (*simplex) return cmd_frequency(simplex_flags, ExperimentKind::Simplex, out, err);
        if (*omega) return cmd_omega(omega_flags, out);
        if (*suite) return cmd_suite(suite_flags, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace bornforge

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bornforge/experiments.hpp"
#include "bornforge/json_io.hpp"

namespace bornforge {

enum class ExperimentKind { Born, Simplex, Mixture, MixtureViolation, Invariance, Contextuality, Alpha };

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view s);

/// A state given inline or drawn at run time from the experiment's setup stream.
struct StateSource {
    bool random = false;
    std::optional<AnyState> state;
};

enum class FrameSource { Computational, Random, Explicit };

enum class AlphaExpectation { Majorization, OddsBelowOne, None };

/// One fully validated experiment of a suite.
struct ExperimentPlan {
    std::string name;
    ExperimentKind kind = ExperimentKind::Born;
    std::optional<std::uint64_t> seed;
    std::size_t n = 0;
    std::uint64_t trials = 0;
    std::uint64_t count = 0;
    std::vector<std::uint64_t> checkpoints;

    StateSource system;
    StateSource observer;                      // contextuality
    std::vector<StateSource> components;       // mixture kinds
    std::vector<double> weights;

    FrameSource frame_source = FrameSource::Computational;
    std::optional<Frame> frame;
    SamplerSpec sampler;
    bool center_from_mixture = false;          // mixture-violation default centre
    OddsScale odds = OddsScale::Moduli;

    double sigma = 4.0;                        // pass band for frequency checks
    double violation_sigma = 5.0;
    std::array<std::size_t, 2> swap{1, 2};     // zero-based
    double alpha_min = 0.0;
    double alpha_max = 1.0;
    bool proportional = false;
    AlphaExpectation expect = AlphaExpectation::None;
};

struct SuiteConfig {
    std::optional<std::uint64_t> seed;
    std::size_t threads = 0;
    std::vector<ExperimentPlan> experiments;
    Json echo;  // the parsed document
};

/// Parses TOML or JSON text. `toml` selects the syntax. Errors are
/// Error(ConfigError) whose message carries `origin`, a line number when
/// known, and the offending field path.
SuiteConfig parse_suite(std::string_view text, bool toml, const std::string& origin = "config");
/// TOML for a `.toml` extension, JSON for `.json`, otherwise sniffed.
SuiteConfig load_suite(const std::filesystem::path& path);

struct ExperimentOutcome {
    bool passed = false;
    std::string criterion;
    Json document;
    std::optional<std::string> trace_csv;
};

/// Seed of experiment `index` when it does not set its own.
std::uint64_t experiment_seed(std::uint64_t suite_seed, std::size_t index);

ExperimentOutcome run_plan(const ExperimentPlan& plan, std::uint64_t seed, std::size_t threads = 0);

}  // namespace bornforge

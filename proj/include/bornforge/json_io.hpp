#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "bornforge/experiments.hpp"
#include "bornforge/geometry.hpp"
#include "bornforge/observer.hpp"
#include "bornforge/state_space.hpp"

namespace bornforge {

/// Insertion-ordered so that serialized files keep a fixed key order.
using Json = nlohmann::ordered_json;

/// `[t1, t2, ...]`.
MixtureState real_state_from_json(const Json& j);
/// `[[re, im], ...]`; bare numbers are accepted as real amplitudes.
PureState complex_state_from_json(const Json& j, NormMode mode = NormMode::Renormalize);
/// List of basis vectors, each in the complex state format.
Frame frame_from_json(const Json& j);

Json to_json(const MixtureState& s);
Json to_json(const PureState& s);
Json to_json(const AnyState& s);
Json to_json(const Frame& f);
/// Outcome indices are written one-based.
Json to_json(const Decision& d);
Json to_json(const VolumeEstimate& v);
Json to_json(const ExperimentResult& r);
Json to_json(const LinearityReport& r);
Json to_json(const MatchReport& r);
Json to_json(const InvarianceReport& r);
Json to_json(const ContextualityReport& r);
Json to_json(const AlphaSweepReport& r);
Json to_json(const UniformityReport& r);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

/// Header `trial_count,tv_distance,freq_1,...,freq_n` then one row per trace point.
void write_trace_csv(std::ostream& os, const ExperimentResult& r);

/// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace bornforge

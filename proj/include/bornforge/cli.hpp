#pragma once

#include <iosfwd>

namespace bornforge {

inline constexpr int kExitPass = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitStatFail = 2;

/// Entry point of the `bornforge` tool: subcommands born, simplex,
/// omega-check and suite.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bornforge

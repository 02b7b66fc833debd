#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bornforge {

enum class ErrorKind {
    InvalidArgument,
    DimensionMismatch,
    IndexOutOfRange,
    NegativeComponent,
    NotNormalized,
    ZeroVector,
    NotOrthonormal,
    NotUnitary,
    KindMismatch,
    AllRatiosZero,
    InvalidBarycentric,
    RejectionExhausted,
    DegenerateSimplex,
    InsufficientSamples,
    SingularMap,
    PreconditionViolated,
    InvalidAlpha,
    InvalidCount,
    ZeroExpected,
    EmptySample,
    ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace bornforge

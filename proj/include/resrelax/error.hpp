// error.hpp — Error kinds raised across the library

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace resrelax {

enum class ErrorCode {
    NonHermitianCoupling,
    DimensionMismatch,
    NonFiniteEnergy,
    DuplicateLabel,
    IndexOutOfRange,
    InvalidArgument,
    SingularEvaluation,
    OutOfRange,
    NonConvergent,
    SubdivisionLimit,
    PoleOnBoundary,
    InsufficientSamples,
    DegenerateTransition,
    NegativeExcitationRate,
    CutoffTooSmall,
    ZeroRelaxationRate,
    StepTooLarge,
    ConfigError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    // Failures of the numerical engine, as opposed to bad input.
    bool is_numerical() const noexcept;

private:
    ErrorCode code_;
};

} // namespace resrelax

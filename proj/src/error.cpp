#include "resrelax/error.hpp"

namespace resrelax {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NonHermitianCoupling: return "NonHermitianCoupling";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteEnergy: return "NonFiniteEnergy";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularEvaluation: return "SingularEvaluation";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::SubdivisionLimit: return "SubdivisionLimit";
    case ErrorCode::PoleOnBoundary: return "PoleOnBoundary";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::DegenerateTransition: return "DegenerateTransition";
    case ErrorCode::NegativeExcitationRate: return "NegativeExcitationRate";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::ZeroRelaxationRate: return "ZeroRelaxationRate";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

bool Error::is_numerical() const noexcept
{
    switch (code_) {
    case ErrorCode::SingularEvaluation:
    case ErrorCode::NonConvergent:
    case ErrorCode::SubdivisionLimit:
    case ErrorCode::NegativeExcitationRate:
    case ErrorCode::CutoffTooSmall:
    case ErrorCode::ZeroRelaxationRate:
    case ErrorCode::StepTooLarge:
        return true;
    default:
        return false;
    }
}

} // namespace resrelax

#include "inertia/error.hpp"

namespace inertia {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::InputParse: return "INPUT_PARSE";
    case ErrorCode::NegativeEntry: return "NEGATIVE_ENTRY";
    case ErrorCode::NotNormalized: return "NOT_NORMALIZED";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::ZeroMarginalRow: return "ZERO_MARGINAL_ROW";
    case ErrorCode::ZeroMarginal: return "ZERO_MARGINAL";
    case ErrorCode::NumericalFailure: return "NUMERICAL_FAILURE";
    case ErrorCode::NotConforming: return "NOT_CONFORMING";
    case ErrorCode::NotUniform: return "NOT_UNIFORM";
    case ErrorCode::NotSymmetricChannel: return "NOT_SYMMETRIC_CHANNEL";
    case ErrorCode::NotPowerOfTwo: return "NOT_POWER_OF_TWO";
    case ErrorCode::InvalidDistribution: return "INVALID_DISTRIBUTION";
    case ErrorCode::InvalidCoefficients: return "INVALID_COEFFICIENTS";
    case ErrorCode::EpsilonOutOfRange: return "EPSILON_OUT_OF_RANGE";
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::SupportViolation: return "SUPPORT_VIOLATION";
    case ErrorCode::NoDerivatives: return "NO_DERIVATIVES";
    case ErrorCode::InconsistentA: return "INCONSISTENT_A";
    case ErrorCode::TooLarge: return "TOO_LARGE";
    case ErrorCode::OutputWrite: return "OUTPUT_WRITE";
  }
  return "UNKNOWN";
}

}  // namespace inertia

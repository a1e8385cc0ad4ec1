#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inertia {

enum class ErrorCode {
  InvalidArgument,
  InputParse,
  NegativeEntry,
  NotNormalized,
  DimensionMismatch,
  ZeroMarginalRow,
  ZeroMarginal,
  NumericalFailure,
  NotConforming,
  NotUniform,
  NotSymmetricChannel,
  NotPowerOfTwo,
  InvalidDistribution,
  InvalidCoefficients,
  EpsilonOutOfRange,
  OutOfRange,
  SupportViolation,
  NoDerivatives,
  InconsistentA,
  TooLarge,
  OutputWrite,
};

// Machine-readable name, e.g. "NOT_NORMALIZED".
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace inertia

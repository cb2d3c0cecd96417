#pragma once

#include <stdexcept>
#include <string>

namespace z2chain {

enum class ErrorCode {
  // Invalid input models and parameters.
  kSchema,
  kEmptyHoppings,
  kDimensionMismatch,
  kNonHermitian,
  kNonUnitary,
  kOddDimension,
  kSymmetryMissing,
  kSymmetryBroken,
  kGaplessParameters,
  kChainTooShort,
  kConfig,
  // Numerical failures.
  kEigenConvergence,
  kNotInsulator,
  kGapAmbiguity,
  kContour,
  kProjectorDistance,
  kTransportConvergence,
  kFramePeriodicity,
  kBerryResolution,
  kWindingAliasing,
  kWindingDomain,
  kWindingClosure,
  kGauge,
  kHomotopyPath,
  // Internal consistency.
  kPathwayDisagreement,
};

enum class ErrorCategory { kModelInvalid, kNumeric, kInternal };

ErrorCategory category_of(ErrorCode code);
const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

/// Raised when a fiber Hamiltonian has spectrum inside the zero-centred gap.
class GapError : public Error {
 public:
  GapError(double k, double min_abs_energy, const std::string& message)
      : Error(ErrorCode::kNotInsulator, message), k_(k), min_abs_energy_(min_abs_energy) {}

  double k() const noexcept { return k_; }
  double min_abs_energy() const noexcept { return min_abs_energy_; }

 private:
  double k_;
  double min_abs_energy_;
};

}  // namespace z2chain

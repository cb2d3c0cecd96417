#include "z2chain/errors.hpp"

namespace z2chain {

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchema:
    case ErrorCode::kEmptyHoppings:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kNonHermitian:
    case ErrorCode::kNonUnitary:
    case ErrorCode::kOddDimension:
    case ErrorCode::kSymmetryMissing:
    case ErrorCode::kSymmetryBroken:
    case ErrorCode::kGaplessParameters:
    case ErrorCode::kChainTooShort:
    case ErrorCode::kConfig:
      return ErrorCategory::kModelInvalid;
    case ErrorCode::kPathwayDisagreement:
      return ErrorCategory::kInternal;
    default:
      return ErrorCategory::kNumeric;
  }
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kEmptyHoppings: return "empty_hoppings";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kNonHermitian: return "non_hermitian";
    case ErrorCode::kNonUnitary: return "non_unitary";
    case ErrorCode::kOddDimension: return "odd_dimension";
    case ErrorCode::kSymmetryMissing: return "symmetry_missing";
    case ErrorCode::kSymmetryBroken: return "symmetry_broken";
    case ErrorCode::kGaplessParameters: return "gapless_parameters";
    case ErrorCode::kChainTooShort: return "chain_too_short";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kEigenConvergence: return "eigen_convergence";
    case ErrorCode::kNotInsulator: return "not_insulator";
    case ErrorCode::kGapAmbiguity: return "gap_ambiguity";
    case ErrorCode::kContour: return "contour";
    case ErrorCode::kProjectorDistance: return "projector_distance";
    case ErrorCode::kTransportConvergence: return "transport_convergence";
    case ErrorCode::kFramePeriodicity: return "frame_periodicity";
    case ErrorCode::kBerryResolution: return "berry_resolution";
    case ErrorCode::kWindingAliasing: return "winding_aliasing";
    case ErrorCode::kWindingDomain: return "winding_domain";
    case ErrorCode::kWindingClosure: return "winding_closure";
    case ErrorCode::kGauge: return "gauge";
    case ErrorCode::kHomotopyPath: return "homotopy_path";
    case ErrorCode::kPathwayDisagreement: return "pathway_disagreement";
  }
  return "unknown";
}

}  // namespace z2chain

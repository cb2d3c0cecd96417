#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "z2chain/errors.hpp"
#include "z2chain/frame.hpp"
#include "z2chain/model.hpp"
#include "z2chain/spectral.hpp"
#include "z2chain/transport.hpp"

namespace z2chain {

inline constexpr int kDefaultGrid = 2048;

struct InvariantOptions {
  /// On transport non-convergence the grid is doubled up to max_grid.
  bool refine = true;
  int max_grid = 32768;
};

struct InvariantResiduals {
  ProjectionDiagnostics projections;
  TransportResiduals transport;
  FrameDiagnostics frame;
  double transport_symmetry = 0.0;
  double berry_rounding = 0.0;     // occupied phase
  double all_bands_rounding = 0.0;
  double corollary = 0.0;          // |occupied - all bands|
  double log_reconstruction = 0.0;

  double max() const;
};

struct InvariantReport {
  int z2 = 0;
  long berry_integer = 0;          // rounded occupied-band phase
  double berry_phase = 0.0;
  double all_bands_phase = 0.0;
  double trace_phase = 0.0;        // -tr X / 2 pi
  std::map<std::string, long> pathway_agreement;  // transport, winding_oracle, all_bands
  GapReport gap;
  SymmetryReport symmetry;
  InvariantResiduals residuals;
  int grid_size = 0;        // grid actually used
  int requested_grid = 0;
  bool near_branch = false;
};

/// The intermediate objects of one invariant computation.
struct InvariantPipeline {
  InvariantReport report;
  ProjectionFamily projections;
  TransportResult transport;
  BlochFrame frame;
};

InvariantPipeline compute_invariant_pipeline(const TightBindingModel& model, int grid_size = kDefaultGrid,
                                             const InvariantOptions& options = {});

/// certify_gap -> projections -> transport -> symmetric frame -> occupied
/// Berry phase -> mod 2, cross-checked against -tr X / 2 pi and the winding of
/// det W. Disagreeing pathways raise kPathwayDisagreement.
InvariantReport compute_invariant(const TightBindingModel& model, int grid_size = kDefaultGrid,
                                  const InvariantOptions& options = {});

struct HomotopyPath {
  std::vector<double> samples;  // t_0 < ... < t_P in [0, 1]
  std::function<TightBindingModel(double)> factory;
};

/// Uniform samples of [0, 1] with `steps` intervals.
HomotopyPath uniform_path(int steps, std::function<TightBindingModel(double)> factory);

inline constexpr double kBisectionDistance = 0.9;
inline constexpr int kMaxBisectionDepth = 30;

struct HomotopyStep {
  double t = 0.0;
  int z2 = 0;
  long berry_integer = 0;
  double projector_distance = 0.0;  // to the previous accepted sample
  long transported_integer = 0;      // Berry integer of the Kato-Nagy transported frame
  bool inserted = false;            // added by bisection
};

struct HomotopyReport {
  std::vector<HomotopyStep> steps;
  bool constant = true;
  int z2 = 0;
  int bisections = 0;
};

/// Carries the offending path parameter.
class HomotopyError : public Error {
 public:
  HomotopyError(ErrorCode code, double t, const std::string& message)
      : Error(code, message), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

/// Invariant at every sample; consecutive samples are bridged by the
/// Kato-Nagy unitary (bisecting while max_k ||P_t - P_s|| >= 0.9) and the
/// transported frame must reproduce the next parity. Gap closure raises a
/// HomotopyError with code kNotInsulator.
HomotopyReport check_homotopy(const HomotopyPath& path, int grid_size = kDefaultGrid);

}  // namespace z2chain

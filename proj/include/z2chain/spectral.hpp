#pragma once

#include <functional>
#include <vector>

#include "z2chain/linalg.hpp"
#include "z2chain/model.hpp"

namespace z2chain {

/// Smallest admissible certified gap half-width.
inline constexpr double kMinimumGap = 1e-6;

struct EigenSystem {
  double k = 0.0;
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns, phase-fixed
};

/// Rotates each column so that its largest-modulus component is real positive
/// (ties within 1e-10 go to the lowest index).
void fix_phases(ComplexMatrix& vectors);

EigenSystem eigensystem(const FiberSample& sample);

struct GapReport {
  double g = 0.0;                  // certified half-width, after local refinement
  double min_abs_eigenvalue = 0.0; // minimum over the sampling grid
  double lower_bound = 0.0;        // -2r of the Riesz contour
  double riesz_radius = 0.0;
  double spectral_radius = 0.0;
  double k_at_min = 0.0;
  int grid_size = 0;
};

/// Throws GapError when the refined minimum of |E_i(k)| falls below threshold.
GapReport certify_gap(const TightBindingModel& model, int grid_size,
                      double threshold = kMinimumGap);

struct ProjectorPair {
  ComplexMatrix minus;
  ComplexMatrix plus;
};

ProjectorPair projector_eigen(const EigenSystem& es, double gap_tol = kMinimumGap);

/// Contour-integral projector onto negative energies, trapezoid rule on the
/// circle of radius r centred at -r. Independent of the eigen route.
ComplexMatrix projector_riesz(const FiberSample& sample, double r, int quad_points,
                              double contour_margin = 1e-10);

/// dP_-/dk from first-order perturbation theory.
ComplexMatrix projector_derivative(const EigenSystem& es, const ComplexMatrix& dH);

/// Unitary U with P U = U Q, defined for ||P - Q|| < 1.
ComplexMatrix kato_nagy(const ComplexMatrix& p, const ComplexMatrix& q);

struct ProjectorSample {
  double k = 0.0;
  ComplexMatrix P;
  ComplexMatrix dP;
};

/// Evaluates a smooth projection family and its derivative at any k.
using ProjectorSource = std::function<ProjectorSample(double)>;

/// P_-(k) and its derivative via the eigen route. The model is copied.
ProjectorSource negative_projector_source(const TightBindingModel& model);

/// Uniform samples k_j = 2 pi j / M, j = 0..M, of a projection family.
struct ProjectionFamily {
  std::vector<double> grid;
  std::vector<ComplexMatrix> P;
  std::vector<ComplexMatrix> dP;
  int rank = 0;
  ProjectorSource source;

  int grid_size() const noexcept { return static_cast<int>(grid.size()) - 1; }
  int dimension() const noexcept { return P.empty() ? 0 : static_cast<int>(P.front().rows()); }
};

ProjectionFamily sample_projections(ProjectorSource source, int grid_size);
ProjectionFamily sample_projections(const TightBindingModel& model, int grid_size);

/// The family 1 - P(k).
ProjectionFamily complement(const ProjectionFamily& pf);

struct ProjectionDiagnostics {
  double idempotency = 0.0;    // max ||P^2 - P||
  double hermiticity = 0.0;    // max ||P - P*||
  double trace_deviation = 0.0;// max |tr P - m|
  double periodicity = 0.0;    // max entry |P(0) - P(2 pi)|
  double sandwich = 0.0;       // max ||P P' P||
};

ProjectionDiagnostics check_projections(const ProjectionFamily& pf);

/// ||C P_+(k) - P_-(-k) C|| or ||S P_+(k) - P_-(k) S||, max over the grid.
double projection_symmetry_residual(const ProjectionFamily& pf, const SymmetryDescriptor& sym);

}  // namespace z2chain

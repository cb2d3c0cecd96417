#pragma once

#include <vector>

#include "z2chain/linalg.hpp"
#include "z2chain/model.hpp"
#include "z2chain/spectral.hpp"

namespace z2chain {

/// Eigenphases of the holonomy are taken in [0, 2 pi); phases this close to
/// 2 pi are snapped to 0 and flagged.
inline constexpr double kBranchTolerance = 1e-6;

struct HolonomyLog {
  ComplexMatrix X;            // Hermitian, exp(iX) = holonomy
  RealVector phases;          // in [0, 2 pi)
  ComplexMatrix eigenvectors; // columns; X = V diag(phases) V*
  double reconstruction = 0.0;// ||exp(iX) - holonomy||
  bool near_branch = false;
};

HolonomyLog holonomy_log(const ComplexMatrix& holonomy, double branch_tol = kBranchTolerance);

struct TransportResiduals {
  double unitarity = 0.0;     // max ||T* T - 1||
  double intertwining = 0.0;  // max ||P(k) T(k) - T(k) P(0)||
  double telescopic = 0.0;    // max ||T(k + 2 pi) - T(k) T(2 pi)||
  double determinant = 0.0;   // max |det T(k) - 1|
  double holonomy_determinant = 0.0;
  double holonomy_commutator = 0.0; // ||[T(2 pi), P(0)]||
};

struct TransportResult {
  std::vector<double> grid;
  std::vector<ComplexMatrix> T;
  ComplexMatrix holonomy;
  HolonomyLog log;
  TransportResiduals residuals;
  int rank = 0;

  int grid_size() const noexcept { return static_cast<int>(grid.size()) - 1; }
  int dimension() const noexcept { return static_cast<int>(holonomy.rows()); }
};

struct TransportOptions {
  bool reunitarize = true;
  bool telescopic_check = true;
  double intertwining_limit = 1e-6;
};

/// RK4 integration of T' = [P', P] T, T(0) = 1, with polar re-unitarisation
/// after every step. Intermediate stages query pf.source at half steps.
TransportResult integrate_transport(const ProjectionFamily& pf, const TransportOptions& options = {});

/// W(k) = T(k) exp(-i k X / 2 pi); periodic in k.
std::vector<ComplexMatrix> periodized_transport(const TransportResult& tr);

/// max ||S T(k) - T(k) S|| or ||C T(k) - T(-k) C|| using T(-k) = T(2 pi - k) T(2 pi)^{-1}.
double transport_symmetry_check(const TransportResult& tr, const SymmetryDescriptor& sym);

}  // namespace z2chain

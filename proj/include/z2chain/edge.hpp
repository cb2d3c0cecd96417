#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "z2chain/chains.hpp"
#include "z2chain/linalg.hpp"
#include "z2chain/model.hpp"

namespace z2chain {

/// Dirichlet truncation to cells 0..L-1: block (n, n + j) = A_j, adjoint below.
struct TruncatedChain {
  TightBindingModel model;
  int cells = 0;
  ComplexMatrix H;
};

TruncatedChain build_truncated(const TightBindingModel& model, int cells);

inline constexpr double kEdgeTolerance = 1e-6;
inline constexpr double kLocalizationThreshold = 0.9;

enum class EdgeSide { kLeft, kRight };
const char* to_string(EdgeSide side);

struct EdgeMode {
  EdgeSide side = EdgeSide::kLeft;
  double energy = 0.0;        // <psi, H psi>
  double localization = 0.0;  // weight in the ceil(L/4) cells at its end
  double decay_fit = 0.0;     // exp of the log-linear slope over cells 2..L/4
  std::vector<double> cell_norms;  // counted from the mode's own end
  ComplexVector state;
};

struct EdgeModeReport {
  int cells = 0;
  int window = 0;
  double edge_tol = kEdgeTolerance;
  double loc_threshold = kLocalizationThreshold;
  std::vector<double> near_zero_energies;
  std::vector<EdgeMode> modes;
  double splitting = 0.0;        // largest |E| inside the near-zero set
  double smallest_bulk = 0.0;    // smallest |E| outside it
  int left_count = 0;
  int right_count = 0;

  bool has_edge_mode() const noexcept { return !modes.empty(); }
};

/// Ascending eigenvalues of H_sharp.
RealVector truncated_spectrum(const TruncatedChain& chain);

/// Localized combinations are extracted from the near-zero eigenspace by
/// diagonalizing the end-window weight operator restricted to it, since the
/// two ends hybridize on a finite chain.
EdgeModeReport find_edge_modes(const TruncatedChain& chain, double edge_tol = kEdgeTolerance,
                               double loc_threshold = kLocalizationThreshold);

/// Columns: cell, then |psi_n| per reported mode (cells from the left end).
void write_mode_profiles_csv(const EdgeModeReport& report, int dimension, std::ostream& out);

struct CharacteristicRoots {
  std::complex<double> plus;
  std::complex<double> minus;
  bool degenerate = false;  // |delta| = 1: first-order recursion, roots -mu/2 and 0
  bool mirrored = false;    // delta < 0 routed through delta -> -delta
};

/// Roots of l^2 + mu/(1+d) l + (1-d)/(1+d) = 0 with d = |delta|.
CharacteristicRoots characteristic_roots(const KitaevParams& p);

/// Both roots strictly inside the unit disk. Throws on gapless parameters.
bool edge_mode_exists_oracle(const KitaevParams& p);

}  // namespace z2chain

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "z2chain/linalg.hpp"
#include "z2chain/model.hpp"
#include "z2chain/spectral.hpp"
#include "z2chain/transport.hpp"

namespace z2chain {

/// Columns 0..m-1 span Ran P_-(k), columns m..N-1 span Ran P_+(k).
struct BlochFrame {
  std::vector<double> grid;
  std::vector<ComplexMatrix> vectors;
  int rank = 0;
  std::optional<SymmetryKind> symmetry;

  int grid_size() const noexcept { return static_cast<int>(grid.size()) - 1; }
  int dimension() const noexcept { return vectors.empty() ? 0 : static_cast<int>(vectors.front().rows()); }
  bool symmetric() const noexcept { return symmetry.has_value(); }
};

/// Negative eigenvectors of H(0) followed by their symmetry partners in
/// reverse order, v_{N-i+1} = (S or C) v_i.
ComplexMatrix initial_symmetric_basis(const EigenSystem& es0, const SymmetryDescriptor& sym);

/// v_i(k) = T(k) exp(-i k X / 2 pi) v_i(0). When sym is given the frame is
/// tagged symmetric; the caller vouches that basis0 is symmetric.
BlochFrame build_frame(const TransportResult& tr, const ComplexMatrix& basis0,
                       std::optional<SymmetryKind> sym = std::nullopt,
                       double periodicity_limit = 1e-6);

struct FrameDiagnostics {
  double orthonormality = 0.0;
  double span = 0.0;
  double periodicity = 0.0;
  double symmetry = 0.0;  // zero unless a descriptor is supplied
};

FrameDiagnostics check_frame(const BlochFrame& frame, const ProjectionFamily& pf,
                             const SymmetryDescriptor* sym = nullptr);

/// max ||S v_i(k) - v_{N-i+1}(k)|| or ||C v_i(k) - v_{N-i+1}(-k)|| over i <= m.
double frame_symmetry_residual(const BlochFrame& frame, const SymmetryDescriptor& sym);

enum class BandSelection { kAll, kOccupied };

struct BerryPhase {
  double value = 0.0;
  long nearest = 0;
  double residual = 0.0;  // |value - nearest|
};

inline constexpr double kIntegerTolerance = 0.1;

/// All bands: (1/2 pi i) sum_{i<=N} int <v_i, v_i'>.
/// Occupied:  (1/pi i)  sum_{i<=m} int <v_i, v_i'>.
/// Fourth-order central differences on the periodic grid, trapezoid rule.
/// Throws kBerryResolution when an integer is expected (all bands, or occupied
/// bands of a symmetric frame) and the residual exceeds 0.1.
BerryPhase berry_phase(const BlochFrame& frame, BandSelection bands);

/// Im <v_i(k_j), v_i'(k_j)>, indexed [j][i], j = 0..M-1.
std::vector<std::vector<double>> berry_connection(const BlochFrame& frame);
void write_berry_connection_csv(const BlochFrame& frame, std::ostream& out);

struct BlochGauge {
  std::vector<double> grid;
  std::vector<ComplexMatrix> G;  // in the ambient basis
  int winding = 0;               // winding of det G
  bool symmetric = false;
};

/// Block tolerance used by apply_gauge.
inline constexpr double kGaugeBlockTolerance = 1e-8;

BlochFrame apply_gauge(const BlochFrame& frame, const BlochGauge& gauge);

/// Gauge whose coefficient blocks in the frame are g_-(k_j), g_+(k_j).
BlochGauge gauge_from_blocks(const BlochFrame& frame, const std::vector<ComplexMatrix>& g_minus,
                             const std::vector<ComplexMatrix>& g_plus, bool symmetric);

BlochGauge identity_gauge(const BlochFrame& frame);

/// e^{iwk} on the occupied block, identity on the rest.
BlochGauge occupied_phase_gauge(const BlochFrame& frame, int w);

/// G_- = e^{iwk} 1 with G_+ fixed by the symmetry relation.
BlochGauge symmetric_twist_gauge(const BlochFrame& frame, const SymmetryDescriptor& sym, int w);

/// G_- = exp(i A(k)) diag(e^{iwk}, 1, ...) with A a random Hermitian Fourier
/// polynomial of degree <= 3 (Gaussian coefficients scaled by amplitude) and
/// w uniform in [-max_winding, max_winding]; G_+ from the symmetry relation.
/// The particle-hole construction needs an even grid.
BlochGauge random_symmetric_gauge(const BlochFrame& frame, const SymmetryDescriptor& sym,
                                  std::uint64_t seed, int max_winding, double amplitude = 0.3);

}  // namespace z2chain

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "z2chain/linalg.hpp"

namespace z2chain {

inline constexpr double kStructuralTolerance = 1e-10;

enum class SymmetryKind { kChiral, kParticleHole };

const char* to_string(SymmetryKind kind);

/// Chiral S (unitary) or particle-hole C = U K (antiunitary). For C the
/// stored matrix is U and C v = U conj(v).
struct SymmetryDescriptor {
  SymmetryKind kind = SymmetryKind::kChiral;
  ComplexMatrix matrix;

  bool antilinear() const noexcept { return kind == SymmetryKind::kParticleHole; }

  /// Applies the symmetry column by column.
  ComplexMatrix apply(const ComplexMatrix& vectors) const;
};

/// H(k) and dH/dk at a reduced momentum k in [0, 2pi).
struct FiberSample {
  double k = 0.0;
  ComplexMatrix H;
  ComplexMatrix dH;
};

/// Finite-range translation-invariant Hamiltonian
///   (H psi)_n = A_0 psi_n + sum_j A_j psi_{n+j} + A_j^* psi_{n-j}.
/// Construction validates the hopping list and the symmetry descriptor.
class TightBindingModel {
 public:
  explicit TightBindingModel(std::vector<ComplexMatrix> hoppings,
                             std::optional<SymmetryDescriptor> symmetry = std::nullopt,
                             double tol = kStructuralTolerance);

  int dimension() const noexcept { return dimension_; }
  int range() const noexcept { return static_cast<int>(hoppings_.size()) - 1; }
  const std::vector<ComplexMatrix>& hoppings() const noexcept { return hoppings_; }
  const std::optional<SymmetryDescriptor>& symmetry() const noexcept { return symmetry_; }

 private:
  std::vector<ComplexMatrix> hoppings_;
  std::optional<SymmetryDescriptor> symmetry_;
  int dimension_ = 0;
};

/// Maps k to [0, 2pi).
double reduce_momentum(double k);

FiberSample fiber(const TightBindingModel& model, double k);

struct SymmetryReport {
  SymmetryKind kind = SymmetryKind::kChiral;
  double max_residual = 0.0;
  double worst_k = 0.0;
  int grid_size = 0;
  double tolerance = kStructuralTolerance;
  bool pass = false;
};

/// Max over a uniform grid of ||S H(k) + H(k) S|| (chiral) or
/// ||C H(-k) + H(k) C|| (particle-hole).
SymmetryReport validate_symmetry(const TightBindingModel& model, int grid_size,
                                 double tol = kStructuralTolerance);

TightBindingModel parse_model(std::string_view document);
std::string model_to_json(const TightBindingModel& model);

}  // namespace z2chain

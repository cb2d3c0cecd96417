#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "z2chain/linalg.hpp"

namespace z2chain {

/// Samples f(k_j), k_j = 2 pi j / M, j = 0..M (last sample closes the loop).
struct ScalarLoop {
  std::vector<Complex> values;
};

struct UnitaryLoop {
  std::vector<ComplexMatrix> values;
};

inline constexpr double kAliasingMargin = 0.1;
inline constexpr int kMaxRefinements = 3;

struct WindingOptions {
  double closure_tol = 1e-8;
  double zero_tol = 1e-12;
};

/// Discrete phase unwrapping. Throws kWindingAliasing on a step with
/// |d arg| >= pi - 0.1, kWindingDomain on a (near) zero sample and
/// kWindingClosure when the endpoints disagree.
int scalar_winding(const ScalarLoop& loop, const WindingOptions& options = {});

/// Samples f on a grid of size M and refines up to three times when a phase
/// step comes too close to pi.
int scalar_winding(const std::function<Complex(double)>& f, int grid_size,
                   const WindingOptions& options = {});

/// Winding of det U(k).
int unitary_winding(const UnitaryLoop& loop, const WindingOptions& options = {});

struct WindingSuiteReport {
  int loops = 0;
  int additivity_failures = 0;
  int involution_failures = 0;
  int scaling_failures = 0;
  int expected_failures = 0;  // computed winding differs from construction
  bool pass() const noexcept {
    return additivity_failures == 0 && involution_failures == 0 && scaling_failures == 0 &&
           expected_failures == 0;
  }
};

/// Seeded Fourier-polynomial loops with a dominant coefficient, so their
/// winding is known by construction. Each of `pairs` pairs is checked for
/// additivity, involution and radial scaling.
WindingSuiteReport winding_properties_suite(std::uint64_t seed, int pairs = 100, int grid_size = 1024);

}  // namespace z2chain

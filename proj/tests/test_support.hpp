#pragma once

#include <functional>
#include <random>
#include <vector>

#include "z2chain/linalg.hpp"

namespace z2chain::testutil {

inline ComplexMatrix random_hermitian(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  ComplexMatrix a(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = Complex(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

// Real eigenvalues of a Hermitian matrix as roots of det(x - A), located by a
// sign scan of the (real) characteristic polynomial followed by bisection.
inline std::vector<double> charpoly_roots(const ComplexMatrix& a, double bound, int scan = 20000) {
  const auto n = a.rows();
  auto p = [&](double x) {
    const ComplexMatrix m = x * ComplexMatrix::Identity(n, n) - a;
    return m.partialPivLu().determinant().real();
  };
  std::vector<double> roots;
  double x0 = -bound, f0 = p(x0);
  for (int i = 1; i <= scan; ++i) {
    const double x1 = -bound + 2.0 * bound * i / scan;
    const double f1 = p(x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if (f0 * f1 < 0.0) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p(mid);
        if (fm * flo <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace z2chain::testutil

#include <Eigen/Eigenvalues>

namespace z2chain::testutil {

// Gapped 4-band model without symmetry: well separated onsite levels plus
// weak random hoppings.
inline std::vector<ComplexMatrix> random_gapped_hoppings(std::mt19937_64& rng, int n = 4) {
  ComplexMatrix a0 = 0.2 * random_hermitian(n, rng);
  for (int i = 0; i < n; ++i) a0(i, i) += (i < n / 2 ? -2.0 + 0.5 * i : 1.0 + 0.5 * i);
  std::normal_distribution<double> g(0.0, 0.1);
  ComplexMatrix a1(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a1(r, c) = Complex(g(rng), g(rng));
  return {a0, a1};
}

// det of the discrete Wilson loop prod_j V_{j+1}^* V_j over the occupied
// eigenvectors (Eigen's solver, independent of the library's Jacobi).
inline Complex wilson_loop_det(const std::function<ComplexMatrix(double)>& h, int m, int grid) {
  auto occ = [&](double k) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h(k));
    return ComplexMatrix(es.eigenvectors().leftCols(m));
  };
  const ComplexMatrix v0 = occ(0.0);
  ComplexMatrix prev = v0;
  Complex acc(1.0, 0.0);
  for (int j = 1; j <= grid; ++j) {
    const ComplexMatrix cur = j == grid ? v0 : occ(kTwoPi * j / grid);
    const Complex d = (cur.adjoint() * prev).determinant();
    acc *= d / std::abs(d);
    prev = cur;
  }
  return acc;
}

}  // namespace z2chain::testutil

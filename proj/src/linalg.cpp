#include "z2chain/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "z2chain/errors.hpp"

namespace z2chain {

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const ComplexMatrix gram = a.adjoint() * a;
  const HermitianEigen es = jacobi_eigen(gram);
  return std::sqrt(std::max(0.0, es.values(es.values.size() - 1)));
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

double hermiticity_residual(const ComplexMatrix& a) {
  return operator_norm(a - a.adjoint());
}

double unitarity_residual(const ComplexMatrix& a) {
  return operator_norm(a.adjoint() * a - ComplexMatrix::Identity(a.cols(), a.cols()));
}

namespace {

// Applies the 2x2 unitary u on columns p, q of m (m <- m U).
void rotate_columns(ComplexMatrix& m, Eigen::Index p, Eigen::Index q, const Complex u[2][2]) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const Complex mp = m(r, p);
    const Complex mq = m(r, q);
    m(r, p) = mp * u[0][0] + mq * u[1][0];
    m(r, q) = mp * u[0][1] + mq * u[1][1];
  }
}

// m <- U* m on rows p, q.
void rotate_rows(ComplexMatrix& m, Eigen::Index p, Eigen::Index q, const Complex u[2][2]) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const Complex mp = m(p, c);
    const Complex mq = m(q, c);
    m(p, c) = std::conj(u[0][0]) * mp + std::conj(u[1][0]) * mq;
    m(q, c) = std::conj(u[0][1]) * mp + std::conj(u[1][1]) * mq;
  }
}

}  // namespace

HermitianEigen jacobi_eigen(const ComplexMatrix& input, int max_sweeps) {
  const Eigen::Index n = input.rows();
  ComplexMatrix a = 0.5 * (input + input.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double scale = a.norm();
  const double threshold = 1e-15 * std::max(scale, 1e-300);

  int sweep = 0;
  for (;; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    off = std::sqrt(2.0 * off);
    if (off <= threshold) break;
    if (sweep >= max_sweeps) {
      throw Error(ErrorCode::kEigenConvergence,
                  "Jacobi eigensolver did not converge after " + std::to_string(sweep) +
                      " sweeps (off-diagonal norm " + std::to_string(off) + ")");
    }
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= 1e-300) continue;
        const Complex phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Element already negligible next to both diagonal entries.
        if (sweep > 3 && std::abs(app) + 1e20 * mag == std::abs(app) &&
            std::abs(aqq) + 1e20 * mag == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U = diag(1, conj(phase)) * [[c, s], [-s, c]] on (p, q).
        const Complex u[2][2] = {{c, s}, {-s * std::conj(phase), c * std::conj(phase)}};
        rotate_columns(a, p, q, u);
        rotate_rows(a, p, q, u);
        rotate_columns(v, p, q, u);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x).real() < a(y, y).real();
  });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  out.sweeps = sweep;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    out.values(i) = a(src, src).real();
    out.vectors.col(i) = v.col(src);
  }
  return out;
}

ComplexMatrix hermitian_function(const ComplexMatrix& a, const std::function<Complex(double)>& f) {
  const HermitianEigen es = jacobi_eigen(a);
  ComplexVector fd(es.values.size());
  for (Eigen::Index i = 0; i < fd.size(); ++i) fd(i) = f(es.values(i));
  return es.vectors * fd.asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix polar_unitary(const ComplexMatrix& a) {
  const ComplexMatrix gram = a.adjoint() * a;
  return a * hermitian_function(gram, [](double x) { return Complex(1.0 / std::sqrt(x), 0.0); });
}

ComplexMatrix exp_i_hermitian(const ComplexMatrix& a) {
  return hermitian_function(a, [](double x) { return std::exp(kI * x); });
}

}  // namespace z2chain

#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace z2chain {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;
inline constexpr Complex kI{0.0, 1.0};

/// Spectral norm (largest singular value).
double operator_norm(const ComplexMatrix& a);

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// ||A - A*||, spectral norm.
double hermiticity_residual(const ComplexMatrix& a);
/// ||A* A - 1||, spectral norm.
double unitarity_residual(const ComplexMatrix& a);

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Eigenvalues ascending; eigenvector columns orthonormal.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;
  int sweeps = 0;
};

HermitianEigen jacobi_eigen(const ComplexMatrix& a, int max_sweeps = 60);

/// f(A) = V f(diag) V* for Hermitian A.
ComplexMatrix hermitian_function(const ComplexMatrix& a, const std::function<Complex(double)>& f);

/// Nearest unitary in any unitarily invariant norm: A (A* A)^{-1/2}.
ComplexMatrix polar_unitary(const ComplexMatrix& a);

/// exp(i A) for Hermitian A.
ComplexMatrix exp_i_hermitian(const ComplexMatrix& a);

}  // namespace z2chain

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "test_support.hpp"
#include "z2chain/errors.hpp"
#include "z2chain/linalg.hpp"

using namespace z2chain;

TEST(Jacobi, MatchesEigenSolverOnRandomHermitian) {
  std::mt19937_64 rng(7);
  for (int n : {1, 2, 3, 6, 10}) {
    const ComplexMatrix a = testutil::random_hermitian(n, rng);
    const HermitianEigen je = jacobi_eigen(a);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(a);
    EXPECT_LT((je.values - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((je.vectors * je.values.cast<Complex>().asDiagonal() * je.vectors.adjoint() - a).norm(), 1e-12);
    EXPECT_LT(unitarity_residual(je.vectors), 1e-13);
  }
}

TEST(Jacobi, MatchesCharacteristicPolynomialRoots) {
  std::mt19937_64 rng(11);
  const ComplexMatrix a = testutil::random_hermitian(6, rng);
  const auto roots = testutil::charpoly_roots(a, 10.0);
  const HermitianEigen je = jacobi_eigen(a);
  ASSERT_EQ(roots.size(), 6u);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(je.values(i), roots[static_cast<std::size_t>(i)], 1e-8);
}

TEST(Jacobi, PauliX) {
  ComplexMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  const HermitianEigen je = jacobi_eigen(x);
  EXPECT_NEAR(je.values(0), -1.0, 1e-15);
  EXPECT_NEAR(je.values(1), 1.0, 1e-15);
}

TEST(Jacobi, DiagonalInputNeedsNoSweeps) {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 3.0, -1.0, 2.0;
  const HermitianEigen je = jacobi_eigen(d);
  EXPECT_EQ(je.sweeps, 0);
  EXPECT_DOUBLE_EQ(je.values(0), -1.0);
  EXPECT_DOUBLE_EQ(je.values(2), 3.0);
}

TEST(Linalg, OperatorNormIsLargestSingularValue) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  ComplexMatrix a(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a(r, c) = Complex(g(rng), g(rng));
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  EXPECT_NEAR(operator_norm(a), svd.singularValues()(0), 1e-12);
}

TEST(Linalg, PolarUnitaryIsNearestUnitary) {
  std::mt19937_64 rng(5);
  const ComplexMatrix h = testutil::random_hermitian(3, rng);
  const ComplexMatrix u = exp_i_hermitian(h);
  const ComplexMatrix perturbed = 1.001 * u;
  EXPECT_LT(operator_norm(polar_unitary(perturbed) - u), 1e-12);
}

TEST(Linalg, ExpIHermitianMatchesSeries) {
  std::mt19937_64 rng(9);
  const ComplexMatrix h = 0.3 * testutil::random_hermitian(3, rng);
  ComplexMatrix series = ComplexMatrix::Identity(3, 3), term = series;
  for (int n = 1; n < 40; ++n) {
    term = term * (kI * h) / static_cast<double>(n);
    series += term;
  }
  EXPECT_LT((exp_i_hermitian(h) - series).norm(), 1e-13);
}

TEST(Errors, CategoriesMapToExitClasses) {
  EXPECT_EQ(category_of(ErrorCode::kNonHermitian), ErrorCategory::kModelInvalid);
  EXPECT_EQ(category_of(ErrorCode::kTransportConvergence), ErrorCategory::kNumeric);
  EXPECT_EQ(category_of(ErrorCode::kPathwayDisagreement), ErrorCategory::kInternal);
  EXPECT_EQ(GapError(0.0, 0.0, "x").code(), ErrorCode::kNotInsulator);
}

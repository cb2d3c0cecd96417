#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "z2chain/chains.hpp"
#include "z2chain/errors.hpp"
#include "z2chain/spectral.hpp"

using namespace z2chain;

TEST(Spectral, SshBandsMatchClosedForm) {
  for (double d : {-1.5, 0.0, 0.5, 2.0}) {
    for (int j = 0; j < 128; ++j) {
      const double k = kTwoPi * j / 128;
      const EigenSystem es = eigensystem(fiber(ssh_model({d}), k));
      const double e = std::sqrt(std::pow(d + std::cos(k), 2) + std::pow(std::sin(k), 2));
      EXPECT_NEAR(es.eigenvalues(0), -e, 1e-12);
      EXPECT_NEAR(es.eigenvalues(1), e, 1e-12);
    }
  }
}

TEST(Spectral, RandomHermitianAgainstCharacteristicPolynomial) {
  std::mt19937_64 rng(21);
  const ComplexMatrix a = testutil::random_hermitian(6, rng);
  const EigenSystem es = eigensystem(FiberSample{0.0, a, ComplexMatrix::Zero(6, 6)});
  const auto roots = testutil::charpoly_roots(a, 10.0);
  ASSERT_EQ(roots.size(), 6u);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(es.eigenvalues(i), roots[static_cast<std::size_t>(i)], 1e-8);
}

TEST(Spectral, PhaseFixing) {
  ComplexMatrix v(2, 2);
  v << Complex(0, 1), Complex(0.6, 0), Complex(0, 0.2), Complex(0, 0.8);
  fix_phases(v);
  EXPECT_NEAR(v(0, 0).imag(), 0.0, 1e-15);
  EXPECT_GT(v(0, 0).real(), 0.0);
  EXPECT_NEAR(v(1, 1).imag(), 0.0, 1e-15);
  EXPECT_GT(v(1, 1).real(), 0.0);
}

TEST(Spectral, GapCertification) {
  EXPECT_NEAR(certify_gap(ssh_model({0.0}), 1024).g, 1.0, 1e-12);
  // min_k sqrt((d + cos k)^2 + sin^2 k) = |1 - |d||
  EXPECT_NEAR(certify_gap(ssh_model({0.5}), 1000).g, 0.5, 1e-10);
  // refinement between grid points: the minimum at k = pi is off-grid for odd M
  EXPECT_NEAR(certify_gap(ssh_model({0.5}), 257).g, 0.5, 1e-9);
  // E^2 = (1 + 2c)^2 + (1 - c^2) = 3c^2 + 4c + 2, minimal at c = -2/3
  EXPECT_NEAR(certify_gap(kitaev_model({1.0, 0.5}), 512).g, std::sqrt(2.0 / 3.0), 1e-9);
}

TEST(Spectral, GapFailures) {
  try {
    certify_gap(ssh_model({1.0}), 512);
    FAIL();
  } catch (const GapError& e) {
    EXPECT_NEAR(e.k(), kPi, 1e-6);
    EXPECT_LT(e.min_abs_energy(), 1e-6);
  }
  EXPECT_THROW(certify_gap(kitaev_model({2.0, 0.5}), 512), GapError);
  EXPECT_THROW(certify_gap(kitaev_model({1.0, 0.0}), 512), GapError);
}

TEST(Spectral, EigenProjectorAtOrigin) {
  const ProjectorPair p = projector_eigen(eigensystem(fiber(ssh_model({0.0}), 0.0)));
  ComplexMatrix expected(2, 2);
  expected << 0.5, -0.5, -0.5, 0.5;
  EXPECT_LT((p.minus - expected).norm(), 1e-14);
  EXPECT_LT((p.minus * p.plus).norm(), 1e-14);
}

TEST(Spectral, RieszProjectorAgreesWithEigenProjector) {
  const FiberSample s = fiber(ssh_model({0.0}), 0.0);
  ComplexMatrix expected(2, 2);
  expected << 0.5, -0.5, -0.5, 0.5;
  EXPECT_LT((projector_riesz(s, 1.0, 256) - expected).norm(), 1e-8);
}

TEST(Spectral, RieszOfPositiveMatrixVanishes) {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h.diagonal() << 1.0, 2.0;
  EXPECT_LT(projector_riesz(FiberSample{0.0, h, h}, 3.0, 256).norm(), 1e-12);
}

TEST(Spectral, RieszQuadratureConvergesGeometrically) {
  const TightBindingModel m = kitaev_model({1.0, 0.5});
  const FiberSample s = fiber(m, 0.4);
  const ComplexMatrix exact = projector_eigen(eigensystem(s)).minus;
  const double r = certify_gap(m, 256).riesz_radius;
  double prev = operator_norm(projector_riesz(s, r, 32) - exact);
  for (int q : {64, 128}) {
    const double err = operator_norm(projector_riesz(s, r, q) - exact);
    if (err > 1e-14) EXPECT_LT(err, 0.5 * prev);
    prev = err;
  }
}

TEST(Spectral, DerivativeMatchesFiniteDifference) {
  const TightBindingModel m = kitaev_model({1.0, 0.5});
  const double k = 1.1;
  const EigenSystem es = eigensystem(fiber(m, k));
  const ComplexMatrix dp = projector_derivative(es, fiber(m, k).dH);
  auto p = [&](double x) { return projector_eigen(eigensystem(fiber(m, x))).minus; };
  double prev = 0.0;
  for (double h : {1e-2, 5e-3}) {
    const double err = ((p(k + h) - p(k - h)) / (2 * h) - dp).norm();
    if (prev > 0.0) EXPECT_NEAR(prev / err, 4.0, 0.2);
    prev = err;
  }
}

TEST(Spectral, DerivativeIsTraceless) {
  const TightBindingModel m = ssh_model({0.0});
  for (double k : {0.0, 1.0, 3.0}) {
    const FiberSample s = fiber(m, k);
    EXPECT_LT(std::abs(projector_derivative(eigensystem(s), s.dH).trace()), 1e-14);
    EXPECT_LT(projector_derivative(eigensystem(s), ComplexMatrix::Zero(2, 2)).norm(), 1e-15);
  }
}

TEST(Spectral, KatoNagyIntertwines) {
  const ComplexMatrix p = projector_eigen(eigensystem(fiber(ssh_model({0.2}), 1.0))).minus;
  const ComplexMatrix q = projector_eigen(eigensystem(fiber(ssh_model({0.3}), 1.0))).minus;
  const ComplexMatrix u = kato_nagy(p, q);
  EXPECT_LT(operator_norm(p * u - u * q), 1e-10);
  EXPECT_LT(unitarity_residual(u), 1e-12);
  EXPECT_LT(operator_norm(kato_nagy(p, p) - ComplexMatrix::Identity(2, 2)), 1e-13);
}

TEST(Spectral, KatoNagyRejectsDistantProjections) {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2), q = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  q(1, 1) = 1.0;
  try {
    kato_nagy(p, q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProjectorDistance);
  }
}

TEST(Spectral, ProjectionFamilyDiagnostics) {
  for (const auto& m : {ssh_model({0.5}), kitaev_model({1.0, 0.5})}) {
    const ProjectionFamily pf = sample_projections(m, 256);
    EXPECT_EQ(pf.rank, 1);
    const ProjectionDiagnostics d = check_projections(pf);
    EXPECT_LT(d.idempotency, 1e-13);
    EXPECT_LT(d.hermiticity, 1e-13);
    EXPECT_LT(d.trace_deviation, 1e-13);
    EXPECT_LT(d.periodicity, 1e-13);
    EXPECT_LT(d.sandwich, 1e-12);
    EXPECT_LT(projection_symmetry_residual(pf, *m.symmetry()), 1e-12);
  }
}

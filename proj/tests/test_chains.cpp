#include <gtest/gtest.h>

#include <cmath>

#include "z2chain/chains.hpp"
#include "z2chain/errors.hpp"
#include "z2chain/spectral.hpp"

using namespace z2chain;

TEST(Chains, SshBandsClosedForm) {
  for (double d : {-1.7, -0.3, 0.0, 0.5, 2.0}) {
    const TightBindingModel m = ssh_model({d});
    for (int j = 0; j < 128; ++j) {
      const double k = kTwoPi * j / 128;
      const double e = std::abs(d + std::exp(Complex(0.0, k)));
      const auto [lo, hi] = ssh_bands({d}, k);
      EXPECT_NEAR(lo, -e, 1e-12);
      EXPECT_NEAR(hi, e, 1e-12);
      const RealVector ev = eigensystem(fiber(m, k)).eigenvalues;
      EXPECT_NEAR(ev(0), -e, 1e-12);
      EXPECT_NEAR(ev(1), e, 1e-12);
    }
  }
}

TEST(Chains, KitaevBandsClosedForm) {
  for (auto [mu, d] : {std::pair{1.0, 0.5}, std::pair{-2.5, 1.5}, std::pair{0.0, -3.0}}) {
    const TightBindingModel m = kitaev_model({mu, d});
    for (int j = 0; j < 128; ++j) {
      const double k = kTwoPi * j / 128;
      const double a = mu + 2.0 * std::cos(k);
      const double b = 2.0 * d * std::sin(k);
      const double e = std::sqrt(a * a + b * b);
      const auto [lo, hi] = kitaev_bands({mu, d}, k);
      EXPECT_NEAR(lo, -e, 1e-12);
      EXPECT_NEAR(hi, e, 1e-12);
      const RealVector ev = eigensystem(fiber(m, k)).eigenvalues;
      EXPECT_NEAR(ev(0), -e, 1e-12);
      EXPECT_NEAR(ev(1), e, 1e-12);
    }
  }
}

TEST(Chains, ModelsCarryTheirSymmetry) {
  EXPECT_EQ(ssh_model({0.5}).symmetry()->kind, SymmetryKind::kChiral);
  EXPECT_EQ(kitaev_model({1.0, 0.5}).symmetry()->kind, SymmetryKind::kParticleHole);
  EXPECT_TRUE(validate_symmetry(ssh_model({0.3}), 256).pass);
  EXPECT_TRUE(validate_symmetry(kitaev_model({-1.2, 2.2}), 256).pass);
}

TEST(Chains, OracleExamples) {
  EXPECT_EQ(ssh_invariant_oracle({0.5}), 1);
  EXPECT_EQ(ssh_invariant_oracle({-0.99}), 1);
  EXPECT_EQ(ssh_invariant_oracle({1.5}), 0);
  EXPECT_EQ(kitaev_invariant_oracle({1.0, 0.5}), 1);
  EXPECT_EQ(kitaev_invariant_oracle({-1.9, -2.0}), 1);
  EXPECT_EQ(kitaev_invariant_oracle({3.0, 0.5}), 0);
  EXPECT_EQ(kitaev_invariant_oracle({-2.5, 1.0}), 0);
}

TEST(Chains, GaplessParametersAreRejected) {
  for (double d : {1.0, -1.0}) {
    try {
      ssh_invariant_oracle({d});
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kGaplessParameters);
    }
  }
  for (auto p : {KitaevParams{2.0, 0.5}, KitaevParams{-2.0, 1.0}, KitaevParams{1.0, 0.0}}) {
    try {
      kitaev_invariant_oracle(p);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kGaplessParameters);
    }
  }
  // delta = 0 outside |mu| <= 2 still has a gap
  EXPECT_EQ(kitaev_invariant_oracle({3.0, 0.0}), 0);
}

TEST(Chains, GaplessDistance) {
  EXPECT_NEAR(gapless_distance(SSHParams{0.5}), 0.5, 1e-15);
  EXPECT_NEAR(gapless_distance(SSHParams{-1.25}), 0.25, 1e-15);
  EXPECT_NEAR(gapless_distance(KitaevParams{1.0, 0.3}), 0.3, 1e-15);
  EXPECT_NEAR(gapless_distance(KitaevParams{1.0, 2.0}), 1.0, 1e-15);
  EXPECT_NEAR(gapless_distance(KitaevParams{2.5, 0.0}), 0.5, 1e-15);
  EXPECT_NEAR(gapless_distance(KitaevParams{-2.0, 1.0}), 0.0, 1e-15);
}

TEST(Chains, GapCertificateMatchesClosedForm) {
  // SSH gap is ||delta| - 1|, attained at k = 0 or pi
  for (double d : {-1.6, -0.4, 0.25, 1.8}) {
    EXPECT_NEAR(certify_gap(ssh_model({d}), 1024).g, std::abs(std::abs(d) - 1.0), 1e-9);
  }
}

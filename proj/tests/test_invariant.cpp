#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "z2chain/chains.hpp"
#include "z2chain/errors.hpp"
#include "z2chain/invariant.hpp"

using namespace z2chain;

namespace {

// Parity of the lowest-band Zak phase from a discrete Wilson loop.
int wilson_parity(const TightBindingModel& m) {
  const Complex w = testutil::wilson_loop_det([&](double k) { return fiber(m, k).H; }, 1, 4096);
  return w.real() < 0.0 ? 1 : 0;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kConfig;
}

}  // namespace

TEST(Invariant, Examples) {
  EXPECT_EQ(compute_invariant(ssh_model({0.5})).z2, 1);
  EXPECT_EQ(compute_invariant(ssh_model({2.0})).z2, 0);
  EXPECT_EQ(compute_invariant(kitaev_model({1.0, 0.5})).z2, 1);
  EXPECT_EQ(compute_invariant(kitaev_model({3.0, 0.5})).z2, 0);
}

TEST(Invariant, PathwaysAgree) {
  for (const auto& m : {ssh_model({-0.5}), ssh_model({1.3}), kitaev_model({-1.0, 2.0}), kitaev_model({2.4, -0.7})}) {
    const InvariantReport r = compute_invariant(m, 1024);
    ASSERT_EQ(r.pathway_agreement.size(), 3u);
    for (const auto& [name, value] : r.pathway_agreement) EXPECT_EQ(((value % 2) + 2) % 2, r.z2) << name;
    EXPECT_NEAR(r.all_bands_phase, r.trace_phase, 1e-6);
    EXPECT_LT(r.residuals.berry_rounding, 1e-4);
    EXPECT_TRUE(r.symmetry.pass);
    EXPECT_EQ(r.grid_size, 1024);
    EXPECT_EQ(r.requested_grid, 1024);
  }
}

TEST(Invariant, GridRobustness) {
  for (const auto& m : {ssh_model({0.7}), ssh_model({-1.2}), kitaev_model({1.5, 0.3}), kitaev_model({-2.5, 1.0})}) {
    const int z = compute_invariant(m, 512).z2;
    EXPECT_EQ(compute_invariant(m, 1024).z2, z);
    EXPECT_EQ(compute_invariant(m, 2048).z2, z);
  }
}

TEST(Invariant, MatchesWilsonLoopParity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int checked = 0;
  while (checked < 12) {
    const KitaevParams p{u(rng), u(rng)};
    if (gapless_distance(p) < 0.1) continue;
    const TightBindingModel m = kitaev_model(p);
    EXPECT_EQ(compute_invariant(m, 1024).z2, wilson_parity(m)) << p.mu << " " << p.delta;
    ++checked;
  }
  for (double d : {-1.8, -0.9, 0.1, 0.95, 1.05}) {
    const TightBindingModel m = ssh_model({d});
    EXPECT_EQ(compute_invariant(m, 1024).z2, wilson_parity(m)) << d;
  }
}

TEST(Invariant, RefinesGridWhenTransportFails) {
  // strongly anisotropic hopping: 1024 points do not resolve the transport
  const InvariantReport r = compute_invariant(kitaev_model({2.1, 3.0}), 1024);
  EXPECT_EQ(r.z2, 0);
  EXPECT_EQ(r.requested_grid, 1024);
  EXPECT_GT(r.grid_size, 1024);
  EXPECT_EQ(code_of([] { compute_invariant(kitaev_model({2.1, 3.0}), 128, {false, 32768}); }),
            ErrorCode::kTransportConvergence);
}

TEST(Invariant, Errors) {
  EXPECT_EQ(code_of([] { compute_invariant(ssh_model({1.0}), 1024); }), ErrorCode::kNotInsulator);
  EXPECT_EQ(code_of([] { compute_invariant(ssh_model({0.5}), 1023); }), ErrorCode::kConfig);
  const TightBindingModel bare(ssh_model({0.5}).hoppings(), std::nullopt);
  EXPECT_EQ(code_of([&] { compute_invariant(bare, 256); }), ErrorCode::kSymmetryMissing);
  // declared chiral symmetry that the Hamiltonian does not have
  ComplexMatrix s = ComplexMatrix::Identity(2, 2);
  const TightBindingModel wrong(ssh_model({0.5}).hoppings(), SymmetryDescriptor{SymmetryKind::kChiral, s});
  EXPECT_EQ(code_of([&] { compute_invariant(wrong, 256); }), ErrorCode::kSymmetryBroken);
}

TEST(Homotopy, SshPathIsConstant) {
  const HomotopyReport r = check_homotopy(uniform_path(10, [](double t) { return ssh_model({0.2 + 0.6 * t}); }), 1024);
  EXPECT_TRUE(r.constant);
  EXPECT_EQ(r.z2, 1);
  EXPECT_GE(r.steps.size(), 11u);
  for (const auto& s : r.steps) {
    EXPECT_EQ(s.z2, 1);
    EXPECT_LT(s.projector_distance, kBisectionDistance);
  }
}

TEST(Homotopy, KitaevPathIsConstant) {
  const HomotopyReport r =
      check_homotopy(uniform_path(10, [](double t) { return kitaev_model({1.5 * t, 0.5}); }), 1024);
  EXPECT_TRUE(r.constant);
  EXPECT_EQ(r.z2, 1);
  for (std::size_t i = 1; i < r.steps.size(); ++i) {
    EXPECT_EQ(((r.steps[i].transported_integer - r.steps[i].berry_integer) % 2 + 2) % 2, 0);
  }
}

TEST(Homotopy, TrivialPhasePath) {
  const HomotopyReport r = check_homotopy(uniform_path(4, [](double t) { return ssh_model({1.2 + t}); }), 512);
  EXPECT_TRUE(r.constant);
  EXPECT_EQ(r.z2, 0);
}

TEST(Homotopy, ConstantPathHasZeroDistance) {
  const HomotopyReport r = check_homotopy(uniform_path(3, [](double) { return kitaev_model({1.0, 0.5}); }), 512);
  EXPECT_EQ(r.bisections, 0);
  for (const auto& s : r.steps) EXPECT_LT(s.projector_distance, 1e-12);
}

TEST(Homotopy, LargeStepsAreBisected) {
  // at k = pi/2 the Bloch vector turns by about 136 degrees, so
  // ||P_0 - P_1|| = sin(68 deg) > 0.9 and the single step must be split
  const HomotopyReport r =
      check_homotopy(uniform_path(1, [](double t) { return kitaev_model({-1.5 + 3.0 * t, 0.3}); }), 512);
  EXPECT_GE(r.bisections, 1);
  EXPECT_TRUE(r.constant);
  bool inserted = false;
  for (const auto& s : r.steps) {
    inserted = inserted || s.inserted;
    EXPECT_LT(s.projector_distance, kBisectionDistance);
  }
  EXPECT_TRUE(inserted);
}

TEST(Homotopy, GapClosureAborts) {
  try {
    check_homotopy(uniform_path(10, [](double t) { return kitaev_model({1.5 + t, 0.5}); }), 1024);
    FAIL();
  } catch (const HomotopyError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInsulator);
    EXPECT_NEAR(e.t(), 0.5, 0.1);
  }
}

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "z2chain/errors.hpp"
#include "z2chain/winding.hpp"

using namespace z2chain;

namespace {

ScalarLoop sample(const std::function<Complex(double)>& f, int m) {
  ScalarLoop l;
  for (int j = 0; j <= m; ++j) l.values.push_back(f(kTwoPi * j / m));
  return l;
}

ErrorCode winding_error(const ScalarLoop& l) {
  try {
    scalar_winding(l);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kConfig;
}

// (1/2 pi i) int tr(U* U') dk with U' from a centred difference of width 1e-5
// and the periodic trapezoid rule.
double trace_formula(const std::function<ComplexMatrix(double)>& u, int m) {
  Complex acc(0.0, 0.0);
  const double h = 1e-5;
  for (int j = 0; j < m; ++j) {
    const double k = kTwoPi * j / m;
    const ComplexMatrix d = (u(k + h) - u(k - h)) / (2 * h);
    acc += (u(k).adjoint() * d).trace();
  }
  return (acc * (kTwoPi / m) / (kTwoPi * kI)).real();
}

ComplexMatrix random_loop_at(double k, const std::vector<ComplexMatrix>& b, int w) {
  ComplexMatrix a = b[0];
  for (std::size_t n = 1; n < b.size(); ++n) {
    const Complex e = std::exp(kI * (static_cast<double>(n) * k));
    a += e * b[n] + std::conj(e) * b[n].adjoint();
  }
  ComplexMatrix u = exp_i_hermitian(0.5 * (a + a.adjoint()));
  u.col(0) *= std::exp(kI * (static_cast<double>(w) * k));
  return u;
}

}  // namespace

TEST(ScalarWinding, CanonicalLoops) {
  EXPECT_EQ(scalar_winding(sample([](double k) { return std::exp(kI * k); }, 256)), 1);
  EXPECT_EQ(scalar_winding(sample([](double k) { return std::exp(-3.0 * kI * k); }, 256)), -3);
  EXPECT_EQ(scalar_winding(sample([](double k) { return 0.5 + std::exp(kI * k); }, 256)), 1);
  EXPECT_EQ(scalar_winding(sample([](double k) { return 1.5 + std::exp(kI * k); }, 256)), 0);
}

TEST(ScalarWinding, KitaevEllipseHasUnitDegree) {
  auto z = [](double mu, double d) {
    return [=](double k) { return Complex(mu + 2 * std::cos(k), -2 * d * std::sin(k)); };
  };
  EXPECT_EQ(std::abs(scalar_winding(sample(z(1.0, 0.5), 512))), 1);
  EXPECT_EQ(scalar_winding(sample(z(1.0, 0.5), 512)), -scalar_winding(sample(z(1.0, -0.5), 512)));
  EXPECT_EQ(scalar_winding(sample(z(3.0, 0.5), 512)), 0);
}

TEST(ScalarWinding, AliasingIsRefused) {
  // e^{2ik} on four intervals: every step is exactly pi
  EXPECT_EQ(winding_error(sample([](double k) { return std::exp(2.0 * kI * k); }, 4)), ErrorCode::kWindingAliasing);
}

TEST(ScalarWinding, CallableRefinesUpToThreeLevels) {
  EXPECT_EQ(scalar_winding([](double k) { return std::exp(2.0 * kI * k); }, 4), 2);
  // a full turn packed into a width 1e-6 around k = pi: f(pi) = -1 is flanked
  // by samples near +1 at every refinement level
  auto steep = [](double k) { return std::exp(kI * (kPi * (1.0 + std::tanh((k - kPi) / 1e-6)))); };
  try {
    scalar_winding(steep, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWindingAliasing);
  }
}

TEST(ScalarWinding, ZeroCrossingAndClosure) {
  EXPECT_EQ(winding_error(sample([](double k) { return 1.0 + std::exp(kI * k); }, 256)), ErrorCode::kWindingDomain);
  EXPECT_EQ(winding_error(sample([](double k) { return std::exp(0.5 * kI * k); }, 256)), ErrorCode::kWindingClosure);
}

TEST(ScalarWinding, StableUnderGridDoubling) {
  auto f = [](double k) { return 0.3 + std::exp(2.0 * kI * k) + 0.4 * std::exp(-kI * k); };
  EXPECT_EQ(scalar_winding(sample(f, 256)), scalar_winding(sample(f, 512)));
  EXPECT_EQ(scalar_winding(sample(f, 256)), 2);
}

TEST(UnitaryWinding, DiagonalExamples) {
  auto loop = [](int a, int b) {
    UnitaryLoop l;
    for (int j = 0; j <= 128; ++j) {
      const double k = kTwoPi * j / 128;
      ComplexMatrix u = ComplexMatrix::Zero(2, 2);
      u(0, 0) = std::exp(kI * (a * k));
      u(1, 1) = std::exp(kI * (b * k));
      l.values.push_back(u);
    }
    return l;
  };
  EXPECT_EQ(unitary_winding(loop(1, -1)), 0);
  EXPECT_EQ(unitary_winding(loop(1, 0)), 1);
}

TEST(UnitaryWinding, AgreesWithTraceFormulaAndIsAdditive) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> wd(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ComplexMatrix> bu, bv;
    for (int n = 0; n < 3; ++n) {
      bu.push_back(0.3 * testutil::random_hermitian(3, rng));
      bv.push_back(0.3 * testutil::random_hermitian(3, rng));
    }
    const int wu = wd(rng), wv = wd(rng);
    auto u = [&](double k) { return random_loop_at(k, bu, wu); };
    auto v = [&](double k) { return random_loop_at(k, bv, wv); };
    UnitaryLoop lu, lv, luv;
    for (int j = 0; j <= 512; ++j) {
      const double k = kTwoPi * j / 512;
      lu.values.push_back(u(k));
      lv.values.push_back(v(k));
      luv.values.push_back(u(k) * v(k));
    }
    const int a = unitary_winding(lu), b = unitary_winding(lv);
    EXPECT_EQ(a, wu);
    EXPECT_NEAR(trace_formula(u, 512), a, 1e-6);
    EXPECT_EQ(unitary_winding(luv), a + b);
  }
}

TEST(WindingSuite, PropertiesHoldForSeededLoops) {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const WindingSuiteReport r = winding_properties_suite(seed, 100);
    EXPECT_TRUE(r.pass()) << "seed " << seed;
    EXPECT_EQ(r.loops, 200);
  }
}

TEST(WindingSuite, FixedExamples) {
  EXPECT_EQ(scalar_winding([](double k) { return std::exp(5.0 * kI * k); }, 256), 5);
  EXPECT_EQ(scalar_winding([](double k) { return 2.0 + std::exp(-kI * k); }, 256), 0);
}

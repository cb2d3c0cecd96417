#include "z2chain/chains.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "z2chain/errors.hpp"

namespace z2chain {

namespace {
constexpr double kGaplessTolerance = 1e-12;
}

TightBindingModel ssh_model(const SSHParams& p) {
  ComplexMatrix a0(2, 2), a1(2, 2);
  a0 << 0.0, p.delta, p.delta, 0.0;
  a1 << 0.0, 0.0, 1.0, 0.0;
  ComplexMatrix s(2, 2);
  s << 1.0, 0.0, 0.0, -1.0;
  return TightBindingModel({a0, a1}, SymmetryDescriptor{SymmetryKind::kChiral, s});
}

TightBindingModel kitaev_model(const KitaevParams& p) {
  ComplexMatrix a0(2, 2), a1(2, 2);
  a0 << 0.0, p.mu, p.mu, 0.0;
  a1 << 0.0, 1.0 + p.delta, 1.0 - p.delta, 0.0;
  ComplexMatrix u(2, 2);
  u << 1.0, 0.0, 0.0, -1.0;
  return TightBindingModel({a0, a1}, SymmetryDescriptor{SymmetryKind::kParticleHole, u});
}

std::pair<double, double> ssh_bands(const SSHParams& p, double k) {
  const double e = std::hypot(p.delta + std::cos(k), std::sin(k));
  return {-e, e};
}

std::pair<double, double> kitaev_bands(const KitaevParams& p, double k) {
  const double e = std::hypot(p.mu + 2.0 * std::cos(k), 2.0 * p.delta * std::sin(k));
  return {-e, e};
}

double gapless_distance(const SSHParams& p) {
  return std::abs(std::abs(p.delta) - 1.0);
}

double gapless_distance(const KitaevParams& p) {
  const double to_lines = std::abs(std::abs(p.mu) - 2.0);
  const double to_segment = std::abs(p.mu) <= 2.0 ? std::abs(p.delta) : std::numeric_limits<double>::infinity();
  return std::min(to_lines, to_segment);
}

int ssh_invariant_oracle(const SSHParams& p) {
  if (gapless_distance(p) < kGaplessTolerance) {
    std::ostringstream msg;
    msg << "SSH chain is gapless at delta = " << p.delta;
    throw Error(ErrorCode::kGaplessParameters, msg.str());
  }
  return std::abs(p.delta) < 1.0 ? 1 : 0;
}

int kitaev_invariant_oracle(const KitaevParams& p) {
  if (gapless_distance(p) < kGaplessTolerance) {
    std::ostringstream msg;
    msg << "Kitaev chain is gapless at mu = " << p.mu << ", delta = " << p.delta;
    throw Error(ErrorCode::kGaplessParameters, msg.str());
  }
  return (std::abs(p.mu) < 2.0 && p.delta != 0.0) ? 1 : 0;
}

}  // namespace z2chain

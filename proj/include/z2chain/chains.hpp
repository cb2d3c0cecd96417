#pragma once

#include <utility>

#include "z2chain/model.hpp"

namespace z2chain {

struct SSHParams {
  double delta = 0.0;
};

struct KitaevParams {
  double mu = 0.0;
  double delta = 0.0;
};

/// Points closer than this to a gapless set are skipped by sweeps.
inline constexpr double kSweepExclusion = 0.05;

/// A_0 = [[0, d], [d, 0]], A_1 = [[0, 0], [1, 0]], S = diag(1, -1).
TightBindingModel ssh_model(const SSHParams& p);

/// A_0 = [[0, mu], [mu, 0]], A_1 = [[0, 1 + d], [1 - d, 0]], C = diag(1, -1) K.
TightBindingModel kitaev_model(const KitaevParams& p);

/// Closed-form bands (E_-, E_+).
std::pair<double, double> ssh_bands(const SSHParams& p, double k);
std::pair<double, double> kitaev_bands(const KitaevParams& p, double k);

/// Distance to the gapless set: |delta| = 1 for SSH; eta for Kitaev.
double gapless_distance(const SSHParams& p);
double gapless_distance(const KitaevParams& p);

/// Closed-form invariants; throw kGaplessParameters on the gapless set.
int ssh_invariant_oracle(const SSHParams& p);
int kitaev_invariant_oracle(const KitaevParams& p);

}  // namespace z2chain

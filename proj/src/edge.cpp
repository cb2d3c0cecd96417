#include "z2chain/edge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "z2chain/errors.hpp"

namespace z2chain {

const char* to_string(EdgeSide side) {
  return side == EdgeSide::kLeft ? "left" : "right";
}

TruncatedChain build_truncated(const TightBindingModel& model, int cells) {
  const int r = model.range();
  if (cells < std::max(4 * r, 1)) {
    std::ostringstream msg;
    msg << "chain of " << cells << " cells is too short for range " << r << " (need L >= " << 4 * r << ")";
    throw Error(ErrorCode::kChainTooShort, msg.str());
  }
  const int n = model.dimension();
  ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(n) * cells, static_cast<Eigen::Index>(n) * cells);
  for (int c = 0; c < cells; ++c) {
    for (int j = 0; j <= r && c + j < cells; ++j) {
      const ComplexMatrix& a = model.hoppings()[static_cast<std::size_t>(j)];
      h.block(c * n, (c + j) * n, n, n) = a;
      if (j > 0) h.block((c + j) * n, c * n, n, n) = a.adjoint();
    }
  }
  return TruncatedChain{model, cells, std::move(h)};
}

RealVector truncated_spectrum(const TruncatedChain& chain) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(chain.H, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenConvergence, "diagonalization of the truncated chain failed");
  }
  return solver.eigenvalues();
}

namespace {

std::vector<double> cell_norms(const ComplexVector& psi, int n, int cells, EdgeSide side) {
  std::vector<double> out(static_cast<std::size_t>(cells));
  for (int c = 0; c < cells; ++c) {
    const int cell = side == EdgeSide::kLeft ? c : cells - 1 - c;
    out[static_cast<std::size_t>(c)] = psi.segment(static_cast<Eigen::Index>(cell) * n, n).norm();
  }
  return out;
}

// exp(slope) of log |psi_c| against c over cells 2..last, ignoring samples
// lost in round-off.
double decay_fit(const std::vector<double>& norms, int last) {
  const double peak = *std::max_element(norms.begin(), norms.end());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int c = 2; c <= last && c < static_cast<int>(norms.size()); ++c) {
    const double v = norms[static_cast<std::size_t>(c)];
    if (v <= 1e-13 * peak) continue;
    const double y = std::log(v);
    sx += c;
    sy += y;
    sxx += static_cast<double>(c) * c;
    sxy += c * y;
    ++count;
  }
  if (count < 2) return 0.0;
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return std::exp(slope);
}

}  // namespace

EdgeModeReport find_edge_modes(const TruncatedChain& chain, double edge_tol, double loc_threshold) {
  const int n = chain.model.dimension();
  const int cells = chain.cells;
  EdgeModeReport report;
  report.cells = cells;
  report.window = (cells + 3) / 4;
  report.edge_tol = edge_tol;
  report.loc_threshold = loc_threshold;

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(chain.H);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenConvergence, "diagonalization of the truncated chain failed");
  }
  const RealVector& e = solver.eigenvalues();
  std::vector<Eigen::Index> near;
  report.smallest_bulk = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    if (std::abs(e(i)) < edge_tol) {
      near.push_back(i);
      report.near_zero_energies.push_back(e(i));
      report.splitting = std::max(report.splitting, std::abs(e(i)));
    } else {
      report.smallest_bulk = std::min(report.smallest_bulk, std::abs(e(i)));
    }
  }
  if (near.empty()) return report;

  const auto d = static_cast<Eigen::Index>(near.size());
  ComplexMatrix basis(chain.H.rows(), d);
  for (Eigen::Index i = 0; i < d; ++i) basis.col(i) = solver.eigenvectors().col(near[static_cast<std::size_t>(i)]);

  const Eigen::Index rows = static_cast<Eigen::Index>(report.window) * n;
  for (EdgeSide side : {EdgeSide::kLeft, EdgeSide::kRight}) {
    const ComplexMatrix w = side == EdgeSide::kLeft ? basis.topRows(rows) : basis.bottomRows(rows);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> weights(w.adjoint() * w);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double loc = weights.eigenvalues()(i);
      if (loc <= loc_threshold) continue;
      EdgeMode mode;
      mode.side = side;
      mode.localization = loc;
      mode.state = basis * weights.eigenvectors().col(i);
      mode.energy = mode.state.dot(chain.H * mode.state).real();
      mode.cell_norms = cell_norms(mode.state, n, cells, side);
      mode.decay_fit = decay_fit(mode.cell_norms, cells / 4);
      (side == EdgeSide::kLeft ? report.left_count : report.right_count) += 1;
      report.modes.push_back(std::move(mode));
    }
  }
  return report;
}

void write_mode_profiles_csv(const EdgeModeReport& report, int dimension, std::ostream& out) {
  out << "cell";
  for (std::size_t i = 0; i < report.modes.size(); ++i) {
    out << ",mode" << i + 1 << '_' << to_string(report.modes[i].side);
  }
  out << '\n';
  const auto prec = out.precision(12);
  for (int c = 0; c < report.cells; ++c) {
    out << c;
    for (const EdgeMode& m : report.modes) {
      out << ',' << m.state.segment(static_cast<Eigen::Index>(c) * dimension, dimension).norm();
    }
    out << '\n';
  }
  out.precision(prec);
}

CharacteristicRoots characteristic_roots(const KitaevParams& p) {
  CharacteristicRoots roots;
  roots.mirrored = p.delta < 0.0;
  const double d = std::abs(p.delta);
  if (std::abs(d - 1.0) < 1e-14) {
    // 2 y_{n+1} + mu y_n = 0
    roots.degenerate = true;
    roots.plus = -p.mu / 2.0;
    roots.minus = 0.0;
    return roots;
  }
  const double b = p.mu / (1.0 + d);
  const double c = (1.0 - d) / (1.0 + d);
  const std::complex<double> disc = std::sqrt(std::complex<double>(b * b - 4.0 * c, 0.0));
  roots.plus = 0.5 * (-b + disc);
  roots.minus = 0.5 * (-b - disc);
  return roots;
}

bool edge_mode_exists_oracle(const KitaevParams& p) {
  if (gapless_distance(p) < 1e-12) {
    std::ostringstream msg;
    msg << "Kitaev chain is gapless at mu = " << p.mu << ", delta = " << p.delta;
    throw Error(ErrorCode::kGaplessParameters, msg.str());
  }
  const CharacteristicRoots r = characteristic_roots(p);
  return std::abs(r.plus) < 1.0 && std::abs(r.minus) < 1.0;
}

}  // namespace z2chain

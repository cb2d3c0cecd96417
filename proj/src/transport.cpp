#include "z2chain/transport.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "z2chain/errors.hpp"

namespace z2chain {

HolonomyLog holonomy_log(const ComplexMatrix& holonomy, double branch_tol) {
  const Eigen::Index n = holonomy.rows();
  Eigen::ComplexSchur<ComplexMatrix> schur(holonomy);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenConvergence, "Schur decomposition of the holonomy failed");
  }
  HolonomyLog out;
  out.eigenvectors = schur.matrixU();
  out.phases.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double phi = std::arg(schur.matrixT()(i, i));
    if (phi < 0.0) phi += kTwoPi;
    if (phi >= kTwoPi - branch_tol) {
      phi = 0.0;
      out.near_branch = true;
    } else if (phi < branch_tol) {
      out.near_branch = true;
    }
    out.phases(i) = phi;
  }
  out.X = out.eigenvectors * out.phases.cast<Complex>().asDiagonal() * out.eigenvectors.adjoint();
  out.X = 0.5 * (out.X + out.X.adjoint());
  ComplexVector e(n);
  for (Eigen::Index i = 0; i < n; ++i) e(i) = std::exp(kI * out.phases(i));
  const ComplexMatrix rebuilt = out.eigenvectors * e.asDiagonal() * out.eigenvectors.adjoint();
  out.reconstruction = operator_norm(rebuilt - holonomy);
  return out;
}

namespace {

ComplexMatrix generator(const ComplexMatrix& p, const ComplexMatrix& dp) {
  return dp * p - p * dp;
}

// One classical RK4 step for T' = A(k) T with A at k, k + h/2, k + h.
ComplexMatrix rk4_step(const ComplexMatrix& t, double h, const ComplexMatrix& a0,
                       const ComplexMatrix& ahalf, const ComplexMatrix& a1) {
  const ComplexMatrix k1 = a0 * t;
  const ComplexMatrix k2 = ahalf * (t + (0.5 * h) * k1);
  const ComplexMatrix k3 = ahalf * (t + (0.5 * h) * k2);
  const ComplexMatrix k4 = a1 * (t + h * k3);
  return t + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

TransportResult integrate_transport(const ProjectionFamily& pf, const TransportOptions& options) {
  const int m = pf.grid_size();
  const Eigen::Index n = pf.dimension();
  if (m < 4 || !pf.source) throw Error(ErrorCode::kConfig, "projection family is not sampled");
  const double h = kTwoPi / m;

  std::vector<ComplexMatrix> gen_grid(static_cast<std::size_t>(m) + 1);
  std::vector<ComplexMatrix> gen_half(static_cast<std::size_t>(m));
  for (int j = 0; j <= m; ++j) {
    gen_grid[static_cast<std::size_t>(j)] =
        generator(pf.P[static_cast<std::size_t>(j)], pf.dP[static_cast<std::size_t>(j)]);
  }
  for (int j = 0; j < m; ++j) {
    const ProjectorSample s = pf.source(pf.grid[static_cast<std::size_t>(j)] + 0.5 * h);
    gen_half[static_cast<std::size_t>(j)] = generator(s.P, s.dP);
  }

  auto advance = [&](const ComplexMatrix& start, std::vector<ComplexMatrix>& out) {
    out.clear();
    out.reserve(static_cast<std::size_t>(m) + 1);
    out.push_back(start);
    for (int j = 0; j < m; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      ComplexMatrix next = rk4_step(out.back(), h, gen_grid[uj], gen_half[uj], gen_grid[uj + 1]);
      if (options.reunitarize) next = polar_unitary(next);
      out.push_back(std::move(next));
    }
  };

  TransportResult tr;
  tr.grid = pf.grid;
  tr.rank = pf.rank;
  advance(ComplexMatrix::Identity(n, n), tr.T);
  tr.holonomy = tr.T.back();

  auto& res = tr.residuals;
  const ComplexMatrix& p0 = pf.P.front();
  for (int j = 0; j <= m; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const ComplexMatrix& t = tr.T[uj];
    res.unitarity = std::max(res.unitarity, unitarity_residual(t));
    res.intertwining = std::max(res.intertwining, operator_norm(pf.P[uj] * t - t * p0));
    res.determinant = std::max(res.determinant, std::abs(t.determinant() - Complex(1.0, 0.0)));
  }
  res.holonomy_determinant = std::abs(tr.holonomy.determinant() - Complex(1.0, 0.0));
  res.holonomy_commutator = operator_norm(tr.holonomy * p0 - p0 * tr.holonomy);

  if (options.telescopic_check) {
    std::vector<ComplexMatrix> second;
    advance(tr.holonomy, second);
    for (int j = 0; j <= m; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      res.telescopic = std::max(res.telescopic, operator_norm(second[uj] - tr.T[uj] * tr.holonomy));
    }
  }

  if (res.intertwining > options.intertwining_limit) {
    std::ostringstream msg;
    msg << "parallel transport did not converge: intertwining residual " << res.intertwining
        << " exceeds " << options.intertwining_limit << " at M = " << m << "; refine the grid";
    throw Error(ErrorCode::kTransportConvergence, msg.str());
  }

  tr.log = holonomy_log(tr.holonomy);
  return tr;
}

std::vector<ComplexMatrix> periodized_transport(const TransportResult& tr) {
  const Eigen::Index n = tr.dimension();
  std::vector<ComplexMatrix> w;
  w.reserve(tr.T.size());
  for (std::size_t j = 0; j < tr.T.size(); ++j) {
    const double k = tr.grid[j];
    ComplexVector e(n);
    for (Eigen::Index i = 0; i < n; ++i) e(i) = std::exp(-kI * (k * tr.log.phases(i) / kTwoPi));
    const ComplexMatrix twist = tr.log.eigenvectors * e.asDiagonal() * tr.log.eigenvectors.adjoint();
    w.push_back(tr.T[j] * twist);
  }
  return w;
}

double transport_symmetry_check(const TransportResult& tr, const SymmetryDescriptor& sym) {
  const int m = tr.grid_size();
  const ComplexMatrix hol_inv = tr.holonomy.adjoint();
  double worst = 0.0;
  for (int j = 0; j <= m; ++j) {
    const ComplexMatrix& t = tr.T[static_cast<std::size_t>(j)];
    double r = 0.0;
    if (sym.antilinear()) {
      const ComplexMatrix t_reflected = tr.T[static_cast<std::size_t>(m - j)] * hol_inv;
      r = operator_norm(sym.matrix * t.conjugate() - t_reflected * sym.matrix);
    } else {
      r = operator_norm(sym.matrix * t - t * sym.matrix);
    }
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace z2chain

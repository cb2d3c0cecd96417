#include "z2chain/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "z2chain/errors.hpp"

namespace z2chain {

void fix_phases(ComplexMatrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index best = 0;
    double best_mod = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double mod = std::abs(vectors(r, c));
      if (mod > best_mod + 1e-10) {
        best = r;
        best_mod = mod;
      }
    }
    if (best_mod <= 0.0) continue;
    const Complex phase = std::conj(vectors(best, c)) / best_mod;
    vectors.col(c) *= phase;
    vectors(best, c) = Complex(std::abs(vectors(best, c)), 0.0);
  }
}

EigenSystem eigensystem(const FiberSample& sample) {
  HermitianEigen he = jacobi_eigen(sample.H);
  EigenSystem es;
  es.k = sample.k;
  es.eigenvalues = std::move(he.values);
  es.eigenvectors = std::move(he.vectors);
  fix_phases(es.eigenvectors);
  return es;
}

namespace {

double min_abs_energy(const TightBindingModel& model, double k) {
  const RealVector e = jacobi_eigen(fiber(model, k).H).values;
  return e.cwiseAbs().minCoeff();
}

// Golden-section minimisation of f on [a, b].
std::pair<double, double> golden_minimum(const std::function<double(double)>& f, double a, double b) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 80 && (b - a) > 1e-14; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace

GapReport certify_gap(const TightBindingModel& model, int grid_size, double threshold) {
  if (grid_size < 3) throw Error(ErrorCode::kConfig, "gap certification needs at least 3 samples");
  GapReport report;
  report.grid_size = grid_size;
  std::vector<double> fmin(static_cast<std::size_t>(grid_size));
  double radius = 0.0;
  report.min_abs_eigenvalue = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid_size; ++j) {
    const double k = kTwoPi * j / grid_size;
    const RealVector e = jacobi_eigen(fiber(model, k).H).values;
    radius = std::max(radius, e.cwiseAbs().maxCoeff());
    fmin[static_cast<std::size_t>(j)] = e.cwiseAbs().minCoeff();
    if (fmin[static_cast<std::size_t>(j)] < report.min_abs_eigenvalue) {
      report.min_abs_eigenvalue = fmin[static_cast<std::size_t>(j)];
      report.k_at_min = k;
    }
  }

  // Refine around the smallest discrete local minima; a closing gap between
  // grid points shows up as a V-shaped dip.
  std::vector<int> minima;
  for (int j = 0; j < grid_size; ++j) {
    const double prev = fmin[static_cast<std::size_t>((j + grid_size - 1) % grid_size)];
    const double next = fmin[static_cast<std::size_t>((j + 1) % grid_size)];
    const double here = fmin[static_cast<std::size_t>(j)];
    if (here <= prev && here <= next) minima.push_back(j);
  }
  std::sort(minima.begin(), minima.end(), [&](int x, int y) {
    return fmin[static_cast<std::size_t>(x)] < fmin[static_cast<std::size_t>(y)];
  });
  if (minima.size() > 8) minima.resize(8);

  report.g = report.min_abs_eigenvalue;
  const double h = kTwoPi / grid_size;
  auto f = [&](double k) { return min_abs_energy(model, k); };
  for (int j : minima) {
    const double kc = kTwoPi * j / grid_size;
    const auto [k, value] = golden_minimum(f, kc - h, kc + h);
    if (value < report.g) {
      report.g = value;
      report.k_at_min = reduce_momentum(k);
    }
  }

  report.spectral_radius = radius;
  report.riesz_radius = radius + 1.0;
  report.lower_bound = -2.0 * report.riesz_radius;
  if (report.g < threshold) {
    std::ostringstream msg;
    msg << "not an insulator: min |E(k)| = " << report.g << " at k = " << report.k_at_min
        << " (threshold " << threshold << ")";
    throw GapError(report.k_at_min, report.g, msg.str());
  }
  return report;
}

ProjectorPair projector_eigen(const EigenSystem& es, double gap_tol) {
  const Eigen::Index n = es.eigenvalues.size();
  ProjectorPair out{ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double e = es.eigenvalues(i);
    if (std::abs(e) < gap_tol) {
      std::ostringstream msg;
      msg << "eigenvalue " << e << " at k = " << es.k << " lies inside the gap band";
      throw Error(ErrorCode::kGapAmbiguity, msg.str());
    }
    const auto v = es.eigenvectors.col(i);
    (e < 0.0 ? out.minus : out.plus) += v * v.adjoint();
  }
  return out;
}

ComplexMatrix projector_riesz(const FiberSample& sample, double r, int quad_points,
                              double contour_margin) {
  if (quad_points < 32) throw Error(ErrorCode::kConfig, "Riesz quadrature needs >= 32 points");
  const Eigen::Index n = sample.H.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < quad_points; ++j) {
    const double theta = kTwoPi * (j + 0.5) / quad_points;
    const Complex w = r * std::exp(kI * theta);
    const Complex z = -r + w;
    const ComplexMatrix resolvent = (z * id - sample.H).partialPivLu().inverse();
    if (!resolvent.allFinite() || resolvent.norm() * contour_margin > 1.0) {
      std::ostringstream msg;
      msg << "resolvent nearly singular on the contour at z = " << z.real() << "+" << z.imag() << "i";
      throw Error(ErrorCode::kContour, msg.str());
    }
    // dz = i w dtheta, prefactor 1/(2 pi i)
    acc += w * resolvent;
  }
  return acc / static_cast<double>(quad_points);
}

ComplexMatrix projector_derivative(const EigenSystem& es, const ComplexMatrix& dH) {
  const Eigen::Index n = es.eigenvalues.size();
  ComplexMatrix dp = ComplexMatrix::Zero(n, n);
  const ComplexMatrix dh_eig = es.eigenvectors.adjoint() * dH * es.eigenvectors;
  for (Eigen::Index a = 0; a < n; ++a) {
    if (es.eigenvalues(a) >= 0.0) continue;
    for (Eigen::Index b = 0; b < n; ++b) {
      if (es.eigenvalues(b) < 0.0) continue;
      const double denom = es.eigenvalues(a) - es.eigenvalues(b);
      if (std::abs(denom) < 1e-14) {
        throw Error(ErrorCode::kGapAmbiguity, "degenerate cross-gap eigenvalue pair");
      }
      const ComplexMatrix term =
          (dh_eig(b, a) / denom) * es.eigenvectors.col(b) * es.eigenvectors.col(a).adjoint();
      dp += term + term.adjoint();
    }
  }
  return dp;
}

ComplexMatrix kato_nagy(const ComplexMatrix& p, const ComplexMatrix& q) {
  const Eigen::Index n = p.rows();
  const ComplexMatrix diff = p - q;
  const double dist = operator_norm(diff);
  if (dist >= 1.0) {
    std::ostringstream msg;
    msg << "Kato-Nagy unitary undefined: ||P - Q|| = " << dist << " >= 1";
    throw Error(ErrorCode::kProjectorDistance, msg.str());
  }
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix gram = id - diff * diff;
  const ComplexMatrix inv_sqrt =
      hermitian_function(gram, [](double x) { return Complex(1.0 / std::sqrt(x), 0.0); });
  return inv_sqrt * (p * q + (id - p) * (id - q));
}

ProjectorSource negative_projector_source(const TightBindingModel& model) {
  return [model](double k) {
    const FiberSample s = fiber(model, k);
    const EigenSystem es = eigensystem(s);
    ProjectorSample out;
    out.k = k;
    out.P = projector_eigen(es).minus;
    out.dP = projector_derivative(es, s.dH);
    return out;
  };
}

ProjectionFamily sample_projections(ProjectorSource source, int grid_size) {
  if (grid_size < 4) throw Error(ErrorCode::kConfig, "projection grid needs at least 4 intervals");
  ProjectionFamily pf;
  pf.grid.reserve(static_cast<std::size_t>(grid_size) + 1);
  for (int j = 0; j <= grid_size; ++j) {
    const double k = kTwoPi * j / grid_size;
    ProjectorSample s = source(k);
    pf.grid.push_back(k);
    pf.P.push_back(std::move(s.P));
    pf.dP.push_back(std::move(s.dP));
  }
  pf.rank = static_cast<int>(std::lround(pf.P.front().trace().real()));
  pf.source = std::move(source);
  return pf;
}

ProjectionFamily sample_projections(const TightBindingModel& model, int grid_size) {
  return sample_projections(negative_projector_source(model), grid_size);
}

ProjectionFamily complement(const ProjectionFamily& pf) {
  ProjectorSource inner = pf.source;
  ProjectorSource flipped = [inner](double k) {
    ProjectorSample s = inner(k);
    const Eigen::Index n = s.P.rows();
    s.P = ComplexMatrix::Identity(n, n) - s.P;
    s.dP = -s.dP;
    return s;
  };
  return sample_projections(std::move(flipped), pf.grid_size());
}

ProjectionDiagnostics check_projections(const ProjectionFamily& pf) {
  ProjectionDiagnostics d;
  for (std::size_t j = 0; j < pf.P.size(); ++j) {
    const ComplexMatrix& p = pf.P[j];
    d.idempotency = std::max(d.idempotency, operator_norm(p * p - p));
    d.hermiticity = std::max(d.hermiticity, operator_norm(p - p.adjoint()));
    d.trace_deviation = std::max(d.trace_deviation, std::abs(p.trace() - Complex(pf.rank, 0.0)));
    d.sandwich = std::max(d.sandwich, operator_norm(p * pf.dP[j] * p));
  }
  d.periodicity = (pf.P.front() - pf.P.back()).cwiseAbs().maxCoeff();
  return d;
}

double projection_symmetry_residual(const ProjectionFamily& pf, const SymmetryDescriptor& sym) {
  const int m = pf.grid_size();
  const Eigen::Index n = pf.dimension();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  double worst = 0.0;
  for (int j = 0; j < m; ++j) {
    const ComplexMatrix plus = id - pf.P[static_cast<std::size_t>(j)];
    double r = 0.0;
    if (sym.antilinear()) {
      const ComplexMatrix& minus_reflected = pf.P[static_cast<std::size_t>((m - j) % m)];
      r = operator_norm(sym.matrix * plus.conjugate() - minus_reflected * sym.matrix);
    } else {
      r = operator_norm(sym.matrix * plus - pf.P[static_cast<std::size_t>(j)] * sym.matrix);
    }
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace z2chain

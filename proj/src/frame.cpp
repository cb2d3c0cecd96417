#include "z2chain/frame.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "z2chain/errors.hpp"
#include "z2chain/winding.hpp"

namespace z2chain {

ComplexMatrix initial_symmetric_basis(const EigenSystem& es0, const SymmetryDescriptor& sym) {
  const Eigen::Index n = es0.eigenvalues.size();
  const Eigen::Index m = (es0.eigenvalues.array() < 0.0).count();
  if (2 * m != n) {
    std::ostringstream msg;
    msg << "negative eigenspace of H(0) has dimension " << m << ", symmetry requires " << n / 2;
    throw Error(ErrorCode::kSymmetryBroken, msg.str());
  }
  ComplexMatrix basis(n, n);
  basis.leftCols(m) = es0.eigenvectors.leftCols(m);
  const ComplexMatrix partners = sym.apply(basis.leftCols(m));
  for (Eigen::Index i = 0; i < m; ++i) basis.col(n - 1 - i) = partners.col(i);
  return basis;
}

BlochFrame build_frame(const TransportResult& tr, const ComplexMatrix& basis0,
                       std::optional<SymmetryKind> sym, double periodicity_limit) {
  const std::vector<ComplexMatrix> w = periodized_transport(tr);
  BlochFrame frame;
  frame.grid = tr.grid;
  frame.rank = tr.rank;
  frame.symmetry = sym;
  frame.vectors.reserve(w.size());
  for (const ComplexMatrix& wj : w) frame.vectors.push_back(wj * basis0);
  const double periodicity = operator_norm(frame.vectors.back() - frame.vectors.front());
  if (periodicity > periodicity_limit) {
    std::ostringstream msg;
    msg << "frame is not periodic: ||v(2 pi) - v(0)|| = " << periodicity << " exceeds "
        << periodicity_limit << "; transport quality insufficient";
    throw Error(ErrorCode::kFramePeriodicity, msg.str());
  }
  return frame;
}

double frame_symmetry_residual(const BlochFrame& frame, const SymmetryDescriptor& sym) {
  const int mgrid = frame.grid_size();
  const int n = frame.dimension();
  const int m = frame.rank;
  double worst = 0.0;
  for (int j = 0; j <= mgrid; ++j) {
    const ComplexMatrix& v = frame.vectors[static_cast<std::size_t>(j)];
    const ComplexMatrix& target =
        sym.antilinear() ? frame.vectors[static_cast<std::size_t>(mgrid - j)] : v;
    const ComplexMatrix mapped = sym.apply(v.leftCols(m));
    for (int i = 0; i < m; ++i) {
      worst = std::max(worst, (mapped.col(i) - target.col(n - 1 - i)).norm());
    }
  }
  return worst;
}

FrameDiagnostics check_frame(const BlochFrame& frame, const ProjectionFamily& pf,
                             const SymmetryDescriptor* sym) {
  if (pf.grid_size() != frame.grid_size()) throw Error(ErrorCode::kConfig, "grid mismatch");
  FrameDiagnostics d;
  const int n = frame.dimension();
  const int m = frame.rank;
  for (std::size_t j = 0; j < frame.vectors.size(); ++j) {
    const ComplexMatrix& v = frame.vectors[j];
    d.orthonormality = std::max(d.orthonormality, unitarity_residual(v));
    const ComplexMatrix pv = pf.P[j] * v;
    for (int i = 0; i < n; ++i) {
      const double r = i < m ? (pv.col(i) - v.col(i)).norm() : pv.col(i).norm();
      d.span = std::max(d.span, r);
    }
  }
  d.periodicity = operator_norm(frame.vectors.back() - frame.vectors.front());
  if (sym != nullptr) d.symmetry = frame_symmetry_residual(frame, *sym);
  return d;
}

namespace {

// Fourth-order periodic stencil; index j taken mod M (sample M repeats 0).
ComplexMatrix derivative(const BlochFrame& frame, int j) {
  const int m = frame.grid_size();
  const double h = kTwoPi / m;
  auto at = [&](int i) -> const ComplexMatrix& {
    return frame.vectors[static_cast<std::size_t>(((i % m) + m) % m)];
  };
  return (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * h);
}

}  // namespace

std::vector<std::vector<double>> berry_connection(const BlochFrame& frame) {
  const int m = frame.grid_size();
  const int n = frame.dimension();
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n)));
  for (int j = 0; j < m; ++j) {
    const ComplexMatrix& v = frame.vectors[static_cast<std::size_t>(j)];
    const ComplexMatrix dv = derivative(frame, j);
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v.col(i).dot(dv.col(i)).imag();
    }
  }
  return out;
}

void write_berry_connection_csv(const BlochFrame& frame, std::ostream& out) {
  const auto a = berry_connection(frame);
  out << "k";
  for (int i = 0; i < frame.dimension(); ++i) out << ",band" << i + 1;
  out << '\n';
  const auto prec = out.precision(12);
  for (std::size_t j = 0; j < a.size(); ++j) {
    out << frame.grid[j];
    for (double x : a[j]) out << ',' << x;
    out << '\n';
  }
  out.precision(prec);
}

BerryPhase berry_phase(const BlochFrame& frame, BandSelection bands) {
  const int m = frame.grid_size();
  if (m < 5) throw Error(ErrorCode::kConfig, "frame grid too coarse for the derivative stencil");
  const int count = bands == BandSelection::kAll ? frame.dimension() : frame.rank;
  const double h = kTwoPi / m;
  double acc = 0.0;
  for (int j = 0; j < m; ++j) {
    const ComplexMatrix& v = frame.vectors[static_cast<std::size_t>(j)];
    const ComplexMatrix dv = derivative(frame, j);
    for (int i = 0; i < count; ++i) acc += v.col(i).dot(dv.col(i)).imag();
  }
  // <v, v'> is imaginary: (1/2 pi i) * i * Im = Im / 2 pi
  BerryPhase bp;
  bp.value = bands == BandSelection::kAll ? acc * h / kTwoPi : acc * h / kPi;
  bp.nearest = std::lround(bp.value);
  bp.residual = std::abs(bp.value - static_cast<double>(bp.nearest));
  const bool integral = bands == BandSelection::kAll || frame.symmetric();
  if (integral && bp.residual > kIntegerTolerance) {
    std::ostringstream msg;
    msg << "Berry phase " << bp.value << " is " << bp.residual
        << " away from an integer; frame is not a valid Bloch basis at M = " << m;
    throw Error(ErrorCode::kBerryResolution, msg.str());
  }
  return bp;
}

BlochGauge gauge_from_blocks(const BlochFrame& frame, const std::vector<ComplexMatrix>& g_minus,
                             const std::vector<ComplexMatrix>& g_plus, bool symmetric) {
  const std::size_t samples = frame.vectors.size();
  if (g_minus.size() != samples || g_plus.size() != samples) {
    throw Error(ErrorCode::kGauge, "gauge blocks do not match the frame grid");
  }
  const int n = frame.dimension();
  const int m = frame.rank;
  BlochGauge gauge;
  gauge.grid = frame.grid;
  gauge.symmetric = symmetric;
  gauge.G.reserve(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    ComplexMatrix coeff = ComplexMatrix::Zero(n, n);
    coeff.topLeftCorner(m, m) = g_minus[j];
    coeff.bottomRightCorner(n - m, n - m) = g_plus[j];
    const ComplexMatrix& v = frame.vectors[j];
    gauge.G.push_back(v * coeff * v.adjoint());
  }
  WindingOptions opts;
  opts.closure_tol = 1e-6;
  gauge.winding = unitary_winding(UnitaryLoop{gauge.G}, opts);
  return gauge;
}

BlochFrame apply_gauge(const BlochFrame& frame, const BlochGauge& gauge) {
  if (gauge.G.size() != frame.vectors.size()) {
    throw Error(ErrorCode::kGauge, "gauge and frame grids differ");
  }
  const int n = frame.dimension();
  const int m = frame.rank;
  BlochFrame out = frame;
  if (!gauge.symmetric) out.symmetry.reset();
  for (std::size_t j = 0; j < frame.vectors.size(); ++j) {
    const ComplexMatrix& v = frame.vectors[j];
    const ComplexMatrix& g = gauge.G[j];
    // ||P_+ G P_-|| and ||P_- G P_+|| in frame coordinates
    const ComplexMatrix c = v.adjoint() * g * v;
    const double block = std::max(operator_norm(c.bottomLeftCorner(n - m, m)),
                                  operator_norm(c.topRightCorner(m, n - m)));
    if (block > kGaugeBlockTolerance) {
      std::ostringstream msg;
      msg << "gauge is not block-diagonal at k = " << frame.grid[j] << ": off-block norm " << block;
      throw Error(ErrorCode::kGauge, msg.str());
    }
    if (unitarity_residual(g) > kGaugeBlockTolerance) {
      throw Error(ErrorCode::kGauge, "gauge is not unitary");
    }
    out.vectors[j] = g * v;
  }
  return out;
}

namespace {

ComplexMatrix reversal(int m) {
  ComplexMatrix r = ComplexMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) r(i, m - 1 - i) = 1.0;
  return r;
}

std::vector<ComplexMatrix> symmetric_partner(const std::vector<ComplexMatrix>& g_minus,
                                             const SymmetryDescriptor& sym) {
  const int m = static_cast<int>(g_minus.front().rows());
  const ComplexMatrix r = reversal(m);
  const std::size_t samples = g_minus.size();
  std::vector<ComplexMatrix> g_plus(samples);
  if (sym.antilinear()) {
    if ((samples - 1) % 2 != 0) {
      throw Error(ErrorCode::kGauge, "particle-hole gauge construction needs an even grid");
    }
    for (std::size_t j = 0; j < samples; ++j) {
      g_plus[j] = r * g_minus[samples - 1 - j].conjugate() * r;
    }
  } else {
    for (std::size_t j = 0; j < samples; ++j) g_plus[j] = r * g_minus[j] * r;
  }
  return g_plus;
}

}  // namespace

BlochGauge identity_gauge(const BlochFrame& frame) {
  const int n = frame.dimension();
  const int m = frame.rank;
  return gauge_from_blocks(frame, std::vector<ComplexMatrix>(frame.vectors.size(), ComplexMatrix::Identity(m, m)),
                           std::vector<ComplexMatrix>(frame.vectors.size(), ComplexMatrix::Identity(n - m, n - m)),
                           true);
}

BlochGauge occupied_phase_gauge(const BlochFrame& frame, int w) {
  const int n = frame.dimension();
  const int m = frame.rank;
  std::vector<ComplexMatrix> gm;
  gm.reserve(frame.vectors.size());
  for (double k : frame.grid) {
    gm.push_back(std::exp(kI * (static_cast<double>(w) * k)) * ComplexMatrix::Identity(m, m));
  }
  return gauge_from_blocks(
      frame, gm, std::vector<ComplexMatrix>(frame.vectors.size(), ComplexMatrix::Identity(n - m, n - m)),
      w == 0);
}

BlochGauge symmetric_twist_gauge(const BlochFrame& frame, const SymmetryDescriptor& sym, int w) {
  const int m = frame.rank;
  std::vector<ComplexMatrix> gm;
  gm.reserve(frame.vectors.size());
  for (double k : frame.grid) {
    gm.push_back(std::exp(kI * (static_cast<double>(w) * k)) * ComplexMatrix::Identity(m, m));
  }
  return gauge_from_blocks(frame, gm, symmetric_partner(gm, sym), true);
}

BlochGauge random_symmetric_gauge(const BlochFrame& frame, const SymmetryDescriptor& sym,
                                  std::uint64_t seed, int max_winding, double amplitude) {
  const int m = frame.rank;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> twist(-std::abs(max_winding), std::abs(max_winding));
  constexpr int kDegree = 3;

  // A(k) = B_0 + sum_{n=1..3} B_n e^{ink} + B_n* e^{-ink}, B_0 Hermitian.
  std::vector<ComplexMatrix> b(kDegree + 1, ComplexMatrix(m, m));
  for (auto& bn : b) {
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) bn(r, c) = amplitude * Complex(normal(rng), normal(rng));
    }
  }
  b[0] = 0.5 * (b[0] + b[0].adjoint()).eval();
  const int w = twist(rng);

  std::vector<ComplexMatrix> gm;
  gm.reserve(frame.vectors.size());
  for (double k : frame.grid) {
    ComplexMatrix a = b[0];
    for (int n = 1; n <= kDegree; ++n) {
      const Complex e = std::exp(kI * (static_cast<double>(n) * k));
      a += e * b[static_cast<std::size_t>(n)] + std::conj(e) * b[static_cast<std::size_t>(n)].adjoint();
    }
    ComplexMatrix g = exp_i_hermitian(0.5 * (a + a.adjoint()));
    g.col(0) *= std::exp(kI * (static_cast<double>(w) * k));
    gm.push_back(std::move(g));
  }
  return gauge_from_blocks(frame, gm, symmetric_partner(gm, sym), true);
}

}  // namespace z2chain

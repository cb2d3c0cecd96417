#include "z2chain/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "z2chain/winding.hpp"

namespace z2chain {

double InvariantResiduals::max() const {
  return std::max({projections.idempotency, projections.hermiticity, projections.trace_deviation,
                   projections.periodicity, projections.sandwich, transport.unitarity,
                   transport.intertwining, transport.telescopic, transport.determinant,
                   frame.orthonormality, frame.span, frame.periodicity, frame.symmetry,
                   transport_symmetry, all_bands_rounding, corollary, log_reconstruction});
}

namespace {

int parity(long v) { return static_cast<int>(((v % 2) + 2) % 2); }

const SymmetryDescriptor& require_symmetry(const TightBindingModel& model) {
  if (!model.symmetry()) {
    throw Error(ErrorCode::kSymmetryMissing, "the invariant requires a chiral or particle-hole symmetry");
  }
  return *model.symmetry();
}

}  // namespace

namespace {

InvariantPipeline pipeline_at(const TightBindingModel& model, int grid_size) {
  const SymmetryDescriptor& sym = require_symmetry(model);
  if (grid_size % 2 != 0) throw Error(ErrorCode::kConfig, "grid size must be even");

  InvariantPipeline out;
  InvariantReport& rep = out.report;
  rep.grid_size = grid_size;
  rep.symmetry = validate_symmetry(model, grid_size);
  if (!rep.symmetry.pass) {
    std::ostringstream msg;
    msg << to_string(sym.kind) << " symmetry violated: residual " << rep.symmetry.max_residual
        << " at k = " << rep.symmetry.worst_k;
    throw Error(ErrorCode::kSymmetryBroken, msg.str());
  }
  rep.gap = certify_gap(model, grid_size);

  out.projections = sample_projections(model, grid_size);
  rep.residuals.projections = check_projections(out.projections);
  if (2 * out.projections.rank != model.dimension()) {
    throw Error(ErrorCode::kSymmetryBroken, "negative spectral projection does not have rank N/2");
  }

  out.transport = integrate_transport(out.projections);
  const TransportResult& tr = out.transport;
  rep.residuals.transport = tr.residuals;
  rep.residuals.transport_symmetry = transport_symmetry_check(tr, sym);
  rep.residuals.log_reconstruction = tr.log.reconstruction;
  rep.near_branch = tr.log.near_branch;

  const EigenSystem es0 = eigensystem(fiber(model, 0.0));
  const ComplexMatrix basis0 = initial_symmetric_basis(es0, sym);
  out.frame = build_frame(tr, basis0, sym.kind);
  rep.residuals.frame = check_frame(out.frame, out.projections, &sym);

  const BerryPhase occupied = berry_phase(out.frame, BandSelection::kOccupied);
  const BerryPhase all = berry_phase(out.frame, BandSelection::kAll);
  rep.berry_phase = occupied.value;
  rep.berry_integer = occupied.nearest;
  rep.all_bands_phase = all.value;
  rep.residuals.berry_rounding = occupied.residual;
  rep.residuals.all_bands_rounding = all.residual;
  rep.residuals.corollary = std::abs(occupied.value - all.value);
  rep.z2 = parity(rep.berry_integer);

  rep.trace_phase = -tr.log.X.trace().real() / kTwoPi;
  const long trace_integer = std::lround(rep.trace_phase);
  WindingOptions wopts;
  wopts.closure_tol = 1e-6;
  const long det_winding = unitary_winding(UnitaryLoop{periodized_transport(tr)}, wopts);
  rep.pathway_agreement = {{"transport", trace_integer},
                           {"winding_oracle", det_winding},
                           {"all_bands", all.nearest}};

  for (const auto& [name, value] : rep.pathway_agreement) {
    if (parity(value) != rep.z2) {
      std::ostringstream msg;
      msg << "pathway '" << name << "' gives " << value << " but the occupied Berry phase rounds to "
          << rep.berry_integer << " (grid " << grid_size << ")";
      throw Error(ErrorCode::kPathwayDisagreement, msg.str());
    }
  }
  return out;
}

}  // namespace

InvariantPipeline compute_invariant_pipeline(const TightBindingModel& model, int grid_size,
                                             const InvariantOptions& options) {
  for (int m = grid_size;; m *= 2) {
    try {
      InvariantPipeline p = pipeline_at(model, m);
      p.report.requested_grid = grid_size;
      return p;
    } catch (const Error& e) {
      if (!options.refine || e.code() != ErrorCode::kTransportConvergence || 2 * m > options.max_grid) throw;
    }
  }
}

InvariantReport compute_invariant(const TightBindingModel& model, int grid_size, const InvariantOptions& options) {
  return compute_invariant_pipeline(model, grid_size, options).report;
}

HomotopyPath uniform_path(int steps, std::function<TightBindingModel(double)> factory) {
  HomotopyPath path;
  path.factory = std::move(factory);
  for (int i = 0; i <= steps; ++i) path.samples.push_back(static_cast<double>(i) / steps);
  return path;
}

namespace {

// Runs body at path parameter t, converting failures into HomotopyError.
template <typename F>
auto at_parameter(double t, F&& body) {
  try {
    return body();
  } catch (const GapError& e) {
    std::ostringstream msg;
    msg << "gap closes along the homotopy at t = " << t << ": " << e.what();
    throw HomotopyError(ErrorCode::kNotInsulator, t, msg.str());
  } catch (const HomotopyError&) {
    throw;
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << "homotopy failed at t = " << t << ": " << e.what();
    throw HomotopyError(e.code(), t, msg.str());
  }
}

struct Probe {
  double t = 0.0;
  ProjectionFamily projections;
  double distance = 0.0;
  bool inserted = false;
};

Probe probe(const HomotopyPath& path, double t, int grid_size, const SymmetryDescriptor& reference) {
  return at_parameter(t, [&] {
    TightBindingModel model = path.factory(t);
    const SymmetryDescriptor& sym = require_symmetry(model);
    if (sym.kind != reference.kind || !approx_equal(sym.matrix, reference.matrix, kStructuralTolerance)) {
      throw Error(ErrorCode::kSymmetryBroken, "symmetry descriptor changes along the path");
    }
    const SymmetryReport sr = validate_symmetry(model, grid_size);
    if (!sr.pass) throw Error(ErrorCode::kSymmetryBroken, "symmetry violated along the path");
    certify_gap(model, grid_size);
    Probe p;
    p.t = t;
    p.projections = sample_projections(model, grid_size);
    return p;
  });
}

double projector_distance(const ProjectionFamily& a, const ProjectionFamily& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.P.size(); ++j) d = std::max(d, operator_norm(a.P[j] - b.P[j]));
  return d;
}

struct Sample {
  double t = 0.0;
  InvariantPipeline pipeline;
};

Sample evaluate(const HomotopyPath& path, double t, int grid_size, bool refine) {
  return at_parameter(t, [&] {
    InvariantOptions opts;
    opts.refine = refine;
    return Sample{t, compute_invariant_pipeline(path.factory(t), grid_size, opts)};
  });
}

// Occupied Berry phase of the previous frame carried into Ran P_b by the
// Kato-Nagy unitary.
long transported_integer(const Sample& from, const Sample& to) {
  const BlochFrame& src = from.pipeline.frame;
  BlochFrame moved = src;
  for (std::size_t j = 0; j < src.vectors.size(); ++j) {
    const ComplexMatrix u = kato_nagy(to.pipeline.projections.P[j], from.pipeline.projections.P[j]);
    moved.vectors[j] = u * src.vectors[j];
  }
  return berry_phase(moved, BandSelection::kOccupied).nearest;
}

}  // namespace

HomotopyReport check_homotopy(const HomotopyPath& path, int grid_size) {
  if (path.samples.empty() || !path.factory) throw Error(ErrorCode::kConfig, "empty homotopy path");
  HomotopyReport report;
  const SymmetryDescriptor reference = at_parameter(path.samples.front(), [&] {
    return require_symmetry(path.factory(path.samples.front()));
  });

  // Pass 1: gap certification and step control on projector distances.
  std::vector<Probe> accepted;
  accepted.push_back(probe(path, path.samples.front(), grid_size, reference));
  for (std::size_t i = 1; i < path.samples.size(); ++i) {
    std::vector<std::pair<double, int>> targets{{path.samples[i], 0}};
    while (!targets.empty()) {
      const auto [t, depth] = targets.back();
      Probe next = probe(path, t, grid_size, reference);
      const Probe& prev = accepted.back();
      next.distance = projector_distance(prev.projections, next.projections);
      if (next.distance >= kBisectionDistance) {
        if (depth >= kMaxBisectionDepth) {
          std::ostringstream msg;
          msg << "projector distance " << next.distance << " between t = " << prev.t << " and t = " << t
              << " stays above " << kBisectionDistance << " after " << depth << " bisections";
          throw HomotopyError(ErrorCode::kProjectorDistance, t, msg.str());
        }
        targets.emplace_back(0.5 * (prev.t + t), depth + 1);
        ++report.bisections;
        continue;
      }
      targets.pop_back();
      next.inserted = depth > 0;
      accepted.push_back(std::move(next));
    }
  }

  // Pass 2: invariants, and the Kato-Nagy bridge between neighbours.
  Sample prev = evaluate(path, accepted.front().t, grid_size, true);
  report.z2 = prev.pipeline.report.z2;
  report.steps.push_back({prev.t, report.z2, prev.pipeline.report.berry_integer, 0.0,
                          prev.pipeline.report.berry_integer, false});
  for (std::size_t i = 1; i < accepted.size(); ++i) {
    const Probe& pr = accepted[i];
    Sample next = evaluate(path, pr.t, grid_size, true);
    const int gp = prev.pipeline.report.grid_size;
    const int gn = next.pipeline.report.grid_size;
    Sample bridge_prev = gp < gn ? evaluate(path, prev.t, gn, false) : prev;
    Sample bridge_next = gn < gp ? evaluate(path, pr.t, gp, false) : next;
    const long moved = at_parameter(pr.t, [&] { return transported_integer(bridge_prev, bridge_next); });
    const InvariantReport& r = next.pipeline.report;
    if (parity(moved) != r.z2) {
      std::ostringstream msg;
      msg << "Kato-Nagy transported frame has Berry integer " << moved << " but the invariant at t = "
          << pr.t << " is " << r.z2;
      throw HomotopyError(ErrorCode::kPathwayDisagreement, pr.t, msg.str());
    }
    report.steps.push_back({pr.t, r.z2, r.berry_integer, pr.distance, moved, pr.inserted});
    if (r.z2 != report.z2) report.constant = false;
    prev = std::move(next);
  }
  return report;
}

}  // namespace z2chain

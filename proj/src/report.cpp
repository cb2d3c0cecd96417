#include "z2chain/report.hpp"

#include <cmath>
#include <cstdio>

namespace z2chain {

std::string format12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format12(x));
}

using nlohmann::json;

namespace {

json finite_or_null(double x) {
  return std::isfinite(x) ? json(round12(x)) : json(nullptr);
}

}  // namespace

json to_json(const SymmetryReport& r) {
  return {{"kind", to_string(r.kind)},
          {"max_residual", round12(r.max_residual)},
          {"worst_k", round12(r.worst_k)},
          {"grid_size", r.grid_size},
          {"tolerance", round12(r.tolerance)},
          {"pass", r.pass}};
}

json to_json(const GapReport& r) {
  return {{"g", round12(r.g)},
          {"min_abs_eigenvalue", round12(r.min_abs_eigenvalue)},
          {"k_at_min", round12(r.k_at_min)},
          {"lower_bound", round12(r.lower_bound)},
          {"riesz_radius", round12(r.riesz_radius)},
          {"spectral_radius", round12(r.spectral_radius)},
          {"grid_size", r.grid_size}};
}

json to_json(const InvariantReport& r) {
  const InvariantResiduals& s = r.residuals;
  json pathways = json::object();
  for (const auto& [name, value] : r.pathway_agreement) pathways[name] = value;
  return {{"z2", r.z2},
          {"berry_integer", r.berry_integer},
          {"berry_phase", round12(r.berry_phase)},
          {"all_bands_phase", round12(r.all_bands_phase)},
          {"trace_phase", round12(r.trace_phase)},
          {"pathway_agreement", pathways},
          {"gap", to_json(r.gap)},
          {"symmetry", to_json(r.symmetry)},
          {"grid_size", r.grid_size},
          {"requested_grid", r.requested_grid},
          {"near_branch", r.near_branch},
          {"residuals",
           {{"max", round12(s.max())},
            {"projector_idempotency", round12(s.projections.idempotency)},
            {"projector_periodicity", round12(s.projections.periodicity)},
            {"transport_unitarity", round12(s.transport.unitarity)},
            {"transport_intertwining", round12(s.transport.intertwining)},
            {"transport_telescopic", round12(s.transport.telescopic)},
            {"transport_determinant", round12(s.transport.determinant)},
            {"transport_symmetry", round12(s.transport_symmetry)},
            {"holonomy_log", round12(s.log_reconstruction)},
            {"frame_orthonormality", round12(s.frame.orthonormality)},
            {"frame_span", round12(s.frame.span)},
            {"frame_periodicity", round12(s.frame.periodicity)},
            {"frame_symmetry", round12(s.frame.symmetry)},
            {"berry_rounding", round12(s.berry_rounding)},
            {"all_bands_rounding", round12(s.all_bands_rounding)},
            {"corollary", round12(s.corollary)}}}};
}

json to_json(const EdgeModeReport& r) {
  json energies = json::array();
  for (double e : r.near_zero_energies) energies.push_back(round12(e));
  json modes = json::array();
  for (const EdgeMode& m : r.modes) {
    modes.push_back({{"side", to_string(m.side)},
                     {"energy", round12(m.energy)},
                     {"localization", round12(m.localization)},
                     {"decay_fit", round12(m.decay_fit)}});
  }
  return {{"cells", r.cells},
          {"window", r.window},
          {"edge_tol", round12(r.edge_tol)},
          {"loc_threshold", round12(r.loc_threshold)},
          {"near_zero_energies", energies},
          {"modes", modes},
          {"left_count", r.left_count},
          {"right_count", r.right_count},
          {"splitting", round12(r.splitting)},
          {"smallest_bulk", finite_or_null(r.smallest_bulk)},
          {"has_edge_mode", r.has_edge_mode()}};
}

json to_json(const HomotopyReport& r) {
  json steps = json::array();
  for (const HomotopyStep& s : r.steps) {
    steps.push_back({{"t", round12(s.t)},
                     {"z2", s.z2},
                     {"berry_integer", s.berry_integer},
                     {"projector_distance", round12(s.projector_distance)},
                     {"transported_integer", s.transported_integer},
                     {"inserted", s.inserted}});
  }
  return {{"constant", r.constant}, {"z2", r.z2}, {"bisections", r.bisections}, {"steps", steps}};
}

}  // namespace z2chain

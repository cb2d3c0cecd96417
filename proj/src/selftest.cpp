#include "z2chain/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "z2chain/chains.hpp"
#include "z2chain/edge.hpp"
#include "z2chain/errors.hpp"
#include "z2chain/frame.hpp"
#include "z2chain/invariant.hpp"
#include "z2chain/report.hpp"
#include "z2chain/winding.hpp"

namespace z2chain {

bool SelftestReport::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

nlohmann::json SelftestReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"pass", pass()}, {"checks", arr}};
}

namespace {

void run_check(SelftestReport& report, const std::string& name, const std::function<std::string(bool&)>& body) {
  SelftestCheck c;
  c.name = name;
  try {
    bool ok = true;
    c.detail = body(ok);
    c.pass = ok;
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  report.checks.push_back(std::move(c));
}

std::vector<TightBindingModel> regression_models() {
  return {ssh_model({0.5}), ssh_model({2.0}), kitaev_model({1.0, 0.5}), kitaev_model({3.0, 0.5})};
}

}  // namespace

SelftestReport run_selftest(std::uint64_t seed, int grid_size) {
  SelftestReport report;

  run_check(report, "winding_properties", [&](bool& ok) {
    const WindingSuiteReport w = winding_properties_suite(seed, 100);
    ok = w.pass();
    std::ostringstream d;
    d << w.loops << " loops; failures additivity " << w.additivity_failures << ", involution "
      << w.involution_failures << ", scaling " << w.scaling_failures << ", construction " << w.expected_failures;
    return d.str();
  });

  run_check(report, "ssh_scalar_winding", [&](bool& ok) {
    const int a = scalar_winding([](double k) { return 0.5 + std::exp(kI * k); }, grid_size);
    const int b = scalar_winding([](double k) { return 1.5 + std::exp(kI * k); }, grid_size);
    ok = a == 1 && b == 0;
    return "w(0.5 + e^ik) = " + std::to_string(a) + ", w(1.5 + e^ik) = " + std::to_string(b);
  });

  run_check(report, "phase_diagrams", [&](bool& ok) {
    int mismatches = 0, points = 0;
    for (double d : {-1.5, -0.5, 0.0, 0.5, 1.5}) {
      ++points;
      if (compute_invariant(ssh_model({d}), grid_size).z2 != ssh_invariant_oracle({d})) ++mismatches;
    }
    for (double mu : {-2.5, -1.0, 0.0, 1.0, 2.5}) {
      for (double d : {-0.5, 0.5, 1.5}) {
        ++points;
        if (compute_invariant(kitaev_model({mu, d}), grid_size).z2 != kitaev_invariant_oracle({mu, d})) {
          ++mismatches;
        }
      }
    }
    ok = mismatches == 0;
    return std::to_string(points) + " points, " + std::to_string(mismatches) + " mismatches";
  });

  run_check(report, "transport_and_berry", [&](bool& ok) {
    double worst = 0.0, quant = 0.0;
    for (const auto& m : regression_models()) {
      const InvariantPipeline p = compute_invariant_pipeline(m, grid_size);
      const auto& r = p.report.residuals.transport;
      worst = std::max({worst, r.unitarity, r.intertwining, r.telescopic, r.holonomy_determinant});
      quant = std::max(quant, std::abs(p.report.all_bands_phase - p.report.trace_phase));
    }
    ok = worst <= 1e-8 && quant <= 1e-6;
    return "transport residual " + format12(worst) + ", |berry + tr X / 2 pi| " + format12(quant);
  });

  run_check(report, "riesz_vs_eigen", [&](bool& ok) {
    double worst = 0.0;
    for (const auto& m : regression_models()) {
      const GapReport g = certify_gap(m, 256);
      for (int j = 0; j < 64; ++j) {
        const FiberSample s = fiber(m, kTwoPi * j / 64);
        const ComplexMatrix pe = projector_eigen(eigensystem(s)).minus;
        worst = std::max(worst, operator_norm(projector_riesz(s, g.riesz_radius, 256) - pe));
      }
    }
    ok = worst <= 1e-8;
    return "max deviation " + format12(worst);
  });

  run_check(report, "gauge_invariance", [&](bool& ok) {
    int failures = 0;
    for (const auto& m : regression_models()) {
      const InvariantPipeline p = compute_invariant_pipeline(m, grid_size);
      const long base = berry_phase(p.frame, BandSelection::kAll).nearest;
      for (int s = 0; s < 5; ++s) {
        const BlochGauge g = random_symmetric_gauge(p.frame, *m.symmetry(), seed + 17u * s, 2);
        const BlochFrame f = apply_gauge(p.frame, g);
        const long shifted = berry_phase(f, BandSelection::kAll).nearest;
        const BerryPhase occ = berry_phase(f, BandSelection::kOccupied);
        if (g.winding % 2 != 0 || shifted - base != g.winding ||
            ((occ.nearest % 2) + 2) % 2 != p.report.z2) {
          ++failures;
        }
      }
    }
    ok = failures == 0;
    return std::to_string(failures) + " failing gauges of 20";
  });

  run_check(report, "bulk_boundary", [&](bool& ok) {
    int mismatches = 0;
    for (double d : {0.5, 2.0}) {
      const bool edge = find_edge_modes(build_truncated(ssh_model({d}), 60)).has_edge_mode();
      if (edge != (ssh_invariant_oracle({d}) == 1)) ++mismatches;
    }
    for (KitaevParams kp : {KitaevParams{1.0, 0.5}, KitaevParams{3.0, 0.5}, KitaevParams{0.0, 1.0}}) {
      const bool edge = find_edge_modes(build_truncated(kitaev_model(kp), 60)).has_edge_mode();
      if (edge != edge_mode_exists_oracle(kp) || edge != (kitaev_invariant_oracle(kp) == 1)) ++mismatches;
    }
    ok = mismatches == 0;
    return std::to_string(mismatches) + " mismatches";
  });

  run_check(report, "homotopy", [&](bool& ok) {
    const HomotopyReport h = check_homotopy(
        uniform_path(10, [](double t) { return ssh_model({0.2 + 0.6 * t}); }), grid_size);
    ok = h.constant && h.z2 == 1;
    return "z2 = " + std::to_string(h.z2) + " over " + std::to_string(h.steps.size()) + " samples";
  });

  return report;
}

}  // namespace z2chain

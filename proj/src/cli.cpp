#include "z2chain/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "z2chain/chains.hpp"
#include "z2chain/edge.hpp"
#include "z2chain/errors.hpp"
#include "z2chain/invariant.hpp"
#include "z2chain/report.hpp"
#include "z2chain/selftest.hpp"

namespace z2chain {

std::vector<double> parse_range(const std::string& spec) {
  auto number = [&](const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::kConfig, "cannot parse number '" + s + "' in range '" + spec + "'");
    }
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() == 1) return {number(parts[0])};
  if (parts.size() != 3) throw Error(ErrorCode::kConfig, "range must be start:stop:step, got '" + spec + "'");
  const double start = number(parts[0]);
  const double stop = number(parts[1]);
  const double step = number(parts[2]);
  if (step == 0.0 || (stop - start) * step < 0.0) {
    throw Error(ErrorCode::kConfig, "range '" + spec + "' does not advance from start to stop");
  }
  std::vector<double> values;
  const double tol = 1e-9 * std::abs(step);
  for (long i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (step > 0 ? v >= stop - tol : v <= stop + tol) break;
    values.push_back(v);
    if (values.size() > 1000000) throw Error(ErrorCode::kConfig, "range '" + spec + "' is too long");
  }
  return values;
}

void validate_config(const RunConfig& c) {
  const bool builtin = !c.model.empty();
  const bool file = !c.file.empty();
  if (c.command != Command::kSelftest && builtin == file) {
    throw Error(ErrorCode::kConfig, "exactly one model source is required: --model or --file");
  }
  if (builtin && c.model != "ssh" && c.model != "kitaev") {
    throw Error(ErrorCode::kConfig, "unknown model '" + c.model + "' (expected ssh or kitaev)");
  }
  if (file && (!c.delta.empty() || !c.mu.empty())) {
    throw Error(ErrorCode::kConfig, "--delta and --mu only apply to built-in models");
  }
  if (builtin && c.delta.empty()) throw Error(ErrorCode::kConfig, "--delta is required for built-in models");
  if (c.model == "kitaev" && c.mu.empty()) throw Error(ErrorCode::kConfig, "--mu is required for the Kitaev chain");
  if (c.model == "ssh" && !c.mu.empty()) throw Error(ErrorCode::kConfig, "--mu does not apply to the SSH chain");
  if (c.grid_size < 256 || (c.grid_size & (c.grid_size - 1)) != 0) {
    throw Error(ErrorCode::kConfig, "--grid must be a power of two >= 256");
  }
  if (c.jobs < 1) throw Error(ErrorCode::kConfig, "--jobs must be positive");
  if (c.cells < 1) throw Error(ErrorCode::kConfig, "--cells must be positive");
  if (c.command == Command::kSweep && file) {
    throw Error(ErrorCode::kConfig, "sweep needs a built-in model with parameter ranges");
  }
}

namespace {

struct Point {
  double mu = 0.0;
  double delta = 0.0;
};

double single(const std::string& spec, const char* flag) {
  const auto v = parse_range(spec);
  if (v.size() != 1) throw Error(ErrorCode::kConfig, std::string(flag) + " must be a single value here");
  return v.front();
}

TightBindingModel builtin_model(const std::string& name, const Point& p) {
  return name == "ssh" ? ssh_model({p.delta}) : kitaev_model({p.mu, p.delta});
}

TightBindingModel load_model(const RunConfig& c) {
  if (!c.file.empty()) {
    std::ifstream in(c.file, std::ios::binary);
    if (!in) throw Error(ErrorCode::kConfig, "cannot read model file '" + c.file + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
  }
  Point p;
  p.delta = single(c.delta, "--delta");
  if (c.model == "kitaev") p.mu = single(c.mu, "--mu");
  return builtin_model(c.model, p);
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) row += ',';
    row += cells[i];
  }
  return row + '\n';
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kModelInvalid: return 1;
    case ErrorCategory::kNumeric: return 2;
    case ErrorCategory::kInternal: return 3;
  }
  return 3;
}

void cmd_check(const RunConfig& c, std::ostream& out, int& status) {
  const TightBindingModel model = load_model(c);
  nlohmann::json j = {{"dimension", model.dimension()}, {"range", model.range()}, {"hermitian", true}};
  bool ok = true;
  if (model.symmetry()) {
    const SymmetryReport s = validate_symmetry(model, c.grid_size);
    j["symmetry"] = to_json(s);
    if (!s.pass) {
      ok = false;
      status = 1;
      j["error"] = {{"code", to_string(ErrorCode::kSymmetryBroken)},
                    {"message", "symmetry residual exceeds tolerance"}};
    }
  } else {
    j["symmetry"] = nullptr;
    ok = false;
    status = 1;
    j["error"] = {{"code", to_string(ErrorCode::kSymmetryMissing)}, {"message", "no symmetry declared"}};
  }
  if (ok) {
    try {
      j["gap"] = to_json(certify_gap(model, c.grid_size));
    } catch (const GapError& e) {
      ok = false;
      status = 2;
      j["gap"] = nullptr;
      j["error"] = {{"code", to_string(e.code())}, {"message", e.what()}, {"k", round12(e.k())},
                    {"min_abs_energy", round12(e.min_abs_energy())}};
    }
  }
  j["valid"] = ok;
  out << j.dump(2) << '\n';
}

void cmd_bands(const RunConfig& c, std::ostream& out) {
  const TightBindingModel model = load_model(c);
  const int n = model.dimension();
  const OutputFormat fmt = c.format.value_or(OutputFormat::kCsv);
  nlohmann::json j = {{"k", nlohmann::json::array()}, {"bands", nlohmann::json::array()}};
  if (fmt == OutputFormat::kCsv) {
    std::vector<std::string> header{"k"};
    for (int i = 0; i < n; ++i) header.push_back("E" + std::to_string(i + 1));
    out << csv_row(header);
  }
  for (int s = 0; s <= c.grid_size; ++s) {
    const double k = kTwoPi * s / c.grid_size;
    const RealVector e = jacobi_eigen(fiber(model, k).H).values;
    if (fmt == OutputFormat::kCsv) {
      std::vector<std::string> row{format12(k)};
      for (int i = 0; i < n; ++i) row.push_back(format12(e(i)));
      out << csv_row(row);
    } else {
      j["k"].push_back(round12(k));
      nlohmann::json b = nlohmann::json::array();
      for (int i = 0; i < n; ++i) b.push_back(round12(e(i)));
      j["bands"].push_back(b);
    }
  }
  if (fmt == OutputFormat::kJson) out << j.dump(2) << '\n';
}

std::vector<std::string> invariant_row(const InvariantReport& r) {
  return {std::to_string(r.z2), std::to_string(r.berry_integer), format12(r.gap.g), format12(r.residuals.max())};
}

void cmd_invariant(const RunConfig& c, std::ostream& out) {
  const InvariantReport r = compute_invariant(load_model(c), c.grid_size);
  if (c.format.value_or(OutputFormat::kJson) == OutputFormat::kCsv) {
    out << csv_row({"z2", "berry_integer", "gap", "residual_max"}) << csv_row(invariant_row(r));
  } else {
    out << to_json(r).dump(2) << '\n';
  }
}

void cmd_sweep(const RunConfig& c, std::ostream& out) {
  const bool kitaev = c.model == "kitaev";
  const std::vector<double> deltas = parse_range(c.delta);
  const std::vector<double> mus = kitaev ? parse_range(c.mu) : std::vector<double>{0.0};
  std::vector<Point> points;
  for (double mu : mus) {
    for (double d : deltas) {
      const double dist = kitaev ? gapless_distance(KitaevParams{mu, d}) : gapless_distance(SSHParams{d});
      if (dist >= kSweepExclusion) points.push_back({mu, d});
    }
  }

  std::vector<InvariantReport> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = compute_invariant(builtin_model(c.model, points[i]), c.grid_size);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::min<int>(c.jobs, static_cast<int>(std::max<std::size_t>(points.size(), 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const bool csv = c.format.value_or(OutputFormat::kCsv) == OutputFormat::kCsv;
  nlohmann::json j = nlohmann::json::array();
  if (csv) {
    std::vector<std::string> header;
    if (kitaev) header.push_back("mu");
    header.insert(header.end(), {"delta", "z2", "berry_integer", "gap", "residual_max"});
    out << csv_row(header);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (csv) {
      std::vector<std::string> row;
      if (kitaev) row.push_back(format12(points[i].mu));
      row.push_back(format12(points[i].delta));
      const auto rest = invariant_row(results[i]);
      row.insert(row.end(), rest.begin(), rest.end());
      out << csv_row(row);
    } else {
      nlohmann::json item = {{"delta", round12(points[i].delta)}, {"report", to_json(results[i])}};
      if (kitaev) item["mu"] = round12(points[i].mu);
      j.push_back(item);
    }
  }
  if (!csv) out << j.dump(2) << '\n';
}

void cmd_edge(const RunConfig& c, std::ostream& out) {
  const TightBindingModel model = load_model(c);
  const EdgeModeReport r = find_edge_modes(build_truncated(model, c.cells));
  if (!c.profiles.empty()) {
    std::ofstream f(c.profiles, std::ios::binary);
    if (!f) throw Error(ErrorCode::kConfig, "cannot write '" + c.profiles + "'");
    write_mode_profiles_csv(r, model.dimension(), f);
  }
  if (c.format.value_or(OutputFormat::kJson) == OutputFormat::kCsv) {
    write_mode_profiles_csv(r, model.dimension(), out);
  } else {
    out << to_json(r).dump(2) << '\n';
  }
}

void cmd_selftest(const RunConfig& c, std::ostream& out, int& status) {
  const SelftestReport r = run_selftest(c.seed, std::min(c.grid_size, 1024));
  out << r.to_json().dump(2) << '\n';
  if (!r.pass()) status = 3;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_config(config);
    std::ostringstream buffer;
    int status = 0;
    switch (config.command) {
      case Command::kCheck: cmd_check(config, buffer, status); break;
      case Command::kBands: cmd_bands(config, buffer); break;
      case Command::kInvariant: cmd_invariant(config, buffer); break;
      case Command::kSweep: cmd_sweep(config, buffer); break;
      case Command::kEdge: cmd_edge(config, buffer); break;
      case Command::kSelftest: cmd_selftest(config, buffer, status); break;
    }
    if (config.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream f(config.out, std::ios::binary);
      if (!f) throw Error(ErrorCode::kConfig, "cannot write '" + config.out + "'");
      f << buffer.str();
    }
    if (status != 0) err << "error: validation failed (exit " << status << ")\n";
    return status;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Z2 invariant of chiral and particle-hole symmetric chains"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format;

  const std::vector<std::pair<Command, std::string>> commands = {
      {Command::kCheck, "validate model assumptions"},
      {Command::kBands, "band energies on the grid"},
      {Command::kInvariant, "compute the Z2 invariant"},
      {Command::kSweep, "phase diagram over parameter ranges"},
      {Command::kEdge, "zero modes of the truncated chain"},
      {Command::kSelftest, "run the property battery"}};
  const char* names[] = {"check", "bands", "invariant", "sweep", "edge", "selftest"};
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], commands[i].second);
    const Command cmd = commands[i].first;
    sub->callback([&config, cmd] { config.command = cmd; });
    sub->add_option("--model", config.model, "built-in model: ssh or kitaev");
    sub->add_option("--file", config.file, "model JSON file");
    sub->add_option("--delta", config.delta, "delta value or start:stop:step");
    sub->add_option("--mu", config.mu, "mu value or start:stop:step");
    sub->add_option("--grid", config.grid_size, "Brillouin grid size (power of two >= 256)");
    sub->add_option("--cells", config.cells, "cells of the truncated chain");
    sub->add_option("--jobs", config.jobs, "worker threads for sweeps");
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--out", config.out, "output path (default stdout)");
    sub->add_option("--profiles", config.profiles, "edge: also write mode profiles CSV");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  if (format == "json") config.format = OutputFormat::kJson;
  if (format == "csv") config.format = OutputFormat::kCsv;
  return run(config, out, err);
}

}  // namespace z2chain

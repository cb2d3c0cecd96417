#include "z2chain/model.hpp"

#include <cmath>
#include <string>

#include "json.hpp"
#include "z2chain/errors.hpp"

namespace z2chain {

using nlohmann::json;

const char* to_string(SymmetryKind kind) {
  return kind == SymmetryKind::kChiral ? "chiral" : "particle_hole";
}

ComplexMatrix SymmetryDescriptor::apply(const ComplexMatrix& vectors) const {
  if (antilinear()) return matrix * vectors.conjugate();
  return matrix * vectors;
}

TightBindingModel::TightBindingModel(std::vector<ComplexMatrix> hoppings,
                                     std::optional<SymmetryDescriptor> symmetry, double tol)
    : hoppings_(std::move(hoppings)), symmetry_(std::move(symmetry)) {
  if (hoppings_.empty()) {
    throw Error(ErrorCode::kEmptyHoppings, "hopping list is empty: at least A0 is required");
  }
  dimension_ = static_cast<int>(hoppings_.front().rows());
  if (dimension_ <= 0) throw Error(ErrorCode::kDimensionMismatch, "A0 has no rows");
  for (std::size_t j = 0; j < hoppings_.size(); ++j) {
    const auto& a = hoppings_[j];
    if (a.rows() != dimension_ || a.cols() != dimension_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "A" + std::to_string(j) + " is " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + ", expected " + std::to_string(dimension_) +
                      "x" + std::to_string(dimension_));
    }
  }
  const double herm = (hoppings_.front() - hoppings_.front().adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    throw Error(ErrorCode::kNonHermitian,
                "A0 is not Hermitian (max |A0 - A0*| = " + std::to_string(herm) + ")");
  }
  if (symmetry_) {
    const auto& s = symmetry_->matrix;
    if (s.rows() != dimension_ || s.cols() != dimension_) {
      throw Error(ErrorCode::kDimensionMismatch, "symmetry matrix has wrong dimension");
    }
    const ComplexMatrix defect = s.adjoint() * s - ComplexMatrix::Identity(dimension_, dimension_);
    if (defect.cwiseAbs().maxCoeff() > tol) {
      throw Error(ErrorCode::kNonUnitary, "symmetry matrix is not unitary");
    }
    if (dimension_ % 2 != 0) {
      throw Error(ErrorCode::kOddDimension,
                  "symmetric models need an even fiber dimension, got N = " +
                      std::to_string(dimension_));
    }
  }
}

double reduce_momentum(double k) {
  double r = std::fmod(k, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

FiberSample fiber(const TightBindingModel& model, double k) {
  FiberSample out;
  out.k = reduce_momentum(k);
  const auto& a = model.hoppings();
  const int n = model.dimension();
  out.H = a.front();
  out.dH = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 1; j < a.size(); ++j) {
    const double jd = static_cast<double>(j);
    const Complex phase = std::exp(-kI * (jd * out.k));
    const ComplexMatrix forward = phase * a[j];
    out.H += forward + forward.adjoint();
    const ComplexMatrix dforward = (-kI * jd) * forward;
    out.dH += dforward + dforward.adjoint();
  }
  return out;
}

SymmetryReport validate_symmetry(const TightBindingModel& model, int grid_size, double tol) {
  if (!model.symmetry()) {
    throw Error(ErrorCode::kSymmetryMissing, "model has no symmetry descriptor");
  }
  const auto& sym = *model.symmetry();
  SymmetryReport report;
  report.kind = sym.kind;
  report.grid_size = grid_size;
  report.tolerance = tol;
  for (int j = 0; j < grid_size; ++j) {
    const double k = kTwoPi * j / grid_size;
    const ComplexMatrix hk = fiber(model, k).H;
    double residual = 0.0;
    if (sym.antilinear()) {
      const ComplexMatrix hminus = fiber(model, -k).H;
      residual = operator_norm(sym.matrix * hminus.conjugate() + hk * sym.matrix);
    } else {
      residual = operator_norm(sym.matrix * hk + hk * sym.matrix);
    }
    if (residual > report.max_residual) {
      report.max_residual = residual;
      report.worst_k = k;
    }
  }
  report.pass = report.max_residual <= tol;
  return report;
}

namespace {

ComplexMatrix parse_matrix(const json& j, int n, const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, name + " must have " + std::to_string(n) + " rows");
  }
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  name + " row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) {
      const json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw Error(ErrorCode::kSchema, name + " entries must be [re, im] pairs");
      }
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TightBindingModel parse_model(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("model document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kSchema, "model document must be an object");
  if (!doc.contains("N") || !doc["N"].is_number_integer() || doc["N"].get<int>() <= 0) {
    throw Error(ErrorCode::kSchema, "\"N\" must be a positive integer");
  }
  if (!doc.contains("R") || !doc["R"].is_number_integer() || doc["R"].get<int>() < 0) {
    throw Error(ErrorCode::kSchema, "\"R\" must be a non-negative integer");
  }
  if (!doc.contains("hoppings") || !doc["hoppings"].is_object()) {
    throw Error(ErrorCode::kSchema, "\"hoppings\" must be an object");
  }
  const int n = doc["N"].get<int>();
  const int range = doc["R"].get<int>();
  const json& hops = doc["hoppings"];
  if (hops.empty()) throw Error(ErrorCode::kEmptyHoppings, "\"hoppings\" is empty");
  if (static_cast<int>(hops.size()) != range + 1) {
    throw Error(ErrorCode::kSchema, "\"hoppings\" must contain exactly A0..A" + std::to_string(range));
  }
  std::vector<ComplexMatrix> hoppings;
  for (int j = 0; j <= range; ++j) {
    const std::string key = "A" + std::to_string(j);
    if (!hops.contains(key)) throw Error(ErrorCode::kSchema, "missing hopping " + key);
    hoppings.push_back(parse_matrix(hops[key], n, key));
  }

  std::optional<SymmetryDescriptor> symmetry;
  if (doc.contains("symmetry") && !doc["symmetry"].is_null()) {
    const json& s = doc["symmetry"];
    if (!s.is_object() || !s.contains("kind") || !s["kind"].is_string() || !s.contains("matrix")) {
      throw Error(ErrorCode::kSchema, "\"symmetry\" must be null or {kind, matrix}");
    }
    const std::string kind = s["kind"].get<std::string>();
    SymmetryDescriptor desc;
    if (kind == "chiral") {
      desc.kind = SymmetryKind::kChiral;
    } else if (kind == "particle_hole") {
      desc.kind = SymmetryKind::kParticleHole;
    } else {
      throw Error(ErrorCode::kSchema, "unknown symmetry kind \"" + kind + "\"");
    }
    desc.matrix = parse_matrix(s["matrix"], n, "symmetry matrix");
    symmetry = std::move(desc);
  }
  return TightBindingModel(std::move(hoppings), std::move(symmetry));
}

std::string model_to_json(const TightBindingModel& model) {
  json doc;
  doc["N"] = model.dimension();
  doc["R"] = model.range();
  json hops = json::object();
  for (int j = 0; j <= model.range(); ++j) {
    hops["A" + std::to_string(j)] = matrix_to_json(model.hoppings()[static_cast<std::size_t>(j)]);
  }
  doc["hoppings"] = hops;
  if (model.symmetry()) {
    doc["symmetry"] = {{"kind", to_string(model.symmetry()->kind)},
                       {"matrix", matrix_to_json(model.symmetry()->matrix)}};
  } else {
    doc["symmetry"] = nullptr;
  }
  return doc.dump();
}

}  // namespace z2chain

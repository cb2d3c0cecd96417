#pragma once

#include <string>

#include "json.hpp"
#include "z2chain/edge.hpp"
#include "z2chain/invariant.hpp"
#include "z2chain/model.hpp"
#include "z2chain/spectral.hpp"

namespace z2chain {

/// Rounds to 12 significant digits, so serialized output is stable.
double round12(double x);
/// "%.12g".
std::string format12(double x);

nlohmann::json to_json(const SymmetryReport& r);
nlohmann::json to_json(const GapReport& r);
nlohmann::json to_json(const InvariantReport& r);
nlohmann::json to_json(const EdgeModeReport& r);
nlohmann::json to_json(const HomotopyReport& r);

}  // namespace z2chain

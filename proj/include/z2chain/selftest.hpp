#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace z2chain {

struct SelftestCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;
  bool pass() const;
  nlohmann::json to_json() const;
};

/// Module-level property battery on the built-in chains.
SelftestReport run_selftest(std::uint64_t seed, int grid_size = 1024);

}  // namespace z2chain

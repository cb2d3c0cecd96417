#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace z2chain {

enum class Command { kCheck, kBands, kInvariant, kSweep, kEdge, kSelftest };
enum class OutputFormat { kJson, kCsv };

struct RunConfig {
  Command command = Command::kCheck;
  std::string model;  // "ssh" or "kitaev"; empty when file is used
  std::string file;
  std::string delta;  // value or start:stop:step
  std::string mu;
  int grid_size = 2048;
  int cells = 60;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string profiles;  // optional CSV of edge-mode profiles
  std::optional<OutputFormat> format;
};

/// start:stop:step, inclusive of start and exclusive of stop (stop is dropped
/// when a sample lands within 1e-9 step of it). A bare number is one value.
std::vector<double> parse_range(const std::string& spec);

/// Validates a config; throws Error(kConfig).
void validate_config(const RunConfig& config);

/// Runs one command. Returns 0, 1 (model invalid), 2 (numeric failure) or
/// 3 (internal disagreement); messages go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and calls run.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace z2chain

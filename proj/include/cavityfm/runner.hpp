#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cavityfm/config.hpp"

namespace cavityfm {

inline constexpr const char* kVersionString = "1.0.0";

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_numerical = 3, exit_io = 4 };

struct RunResult {
  int exit_code = exit_ok;
  std::string message;
  std::vector<std::string> warnings;
  double condition = 0.0;
  std::string csv_path;
  std::string dataset_path;
  std::string heatmap_path;
  std::string manifest_path;
};

// Throws GeometryError if two boundaries touch or one lies inside another.
void check_disjoint(const std::vector<BoundaryCurve>& curves);

// synthesize -> noise -> decompose -> indicator, writing artifacts into the
// output directory. Errors are reported through the exit code; progress
// lines go to `log` when given.
RunResult run_scenario(const ScenarioConfig& config, std::ostream* log = nullptr);

// Loads the file and runs it; configuration problems give exit_config.
RunResult run_config_file(const std::string& path, std::ostream* log = nullptr);

}  // namespace cavityfm

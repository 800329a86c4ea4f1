#pragma once

// Scenario files: named surfaces and families, an ordered task list, and the
// artifacts each run writes (JSON report, CSV diagnostics, SVG braid).

#include "branchfall/braid.hpp"
#include "branchfall/exact.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace branchfall {

/// Command-line defaults; values given in the scenario take precedence.
struct RunSettings {
  unsigned seed = 17;
  int samples = 0;  // slice samples, 0 picks per branch order
  std::vector<double> epsilon_sweep{0.01, 0.005, 0.0025};
  std::vector<Rational> t_sweep{Rational(1, 1000), Rational(1, 3000), Rational(1, 10000)};
  std::string report;       // report path, empty: none
  std::string svg;          // braid diagram of the last braid task
  std::string diagnostics;  // directory for CSV tables
  double tolerance = 0.1;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 a task failed, 2 the input did not validate
  nlohmann::json report;
  std::string report_path;  // where the report went, empty if nowhere
  std::vector<std::string> artifacts;
  std::vector<std::string> errors;
};

RunResult run_scenario(const nlohmann::json& scenario, const RunSettings& settings, std::ostream& log);

/// Parses the file first; syntax errors report line and column.
RunResult run_scenario_file(const std::string& path, const RunSettings& settings, std::ostream& log);

/// Deterministic SVG: strands left to right, one row per letter, the under
/// strand broken at each crossing.
std::string render_braid_svg(const BraidWord& word);

/// "a,b,c" lists for the sweep flags.
std::vector<double> parse_double_list(const std::string& text);
std::vector<Rational> parse_rational_list(const std::string& text);

}  // namespace branchfall

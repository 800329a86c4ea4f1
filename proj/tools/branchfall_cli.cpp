// branchfall: runs a scenario file and writes the report and artifacts.

#include "branchfall/scenario.hpp"
#include "branchfall/error.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace branchfall;
  CLI::App app{"Fallout invariants of degenerating families of branched disks in R^4"};
  std::string scenario, eps_sweep, t_sweep;
  RunSettings s;
  bool quiet = false;
  app.add_option("--scenario", scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", s.seed, "random seed")->capture_default_str();
  app.add_option("--samples", s.samples, "slice samples per curve, 0 chooses from the branch order")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--epsilon-sweep", eps_sweep, "comma separated sphere radii for quadrature extrapolation");
  app.add_option("--t-sweep", t_sweep, "comma separated parameter values, e.g. 1/1000,1/3000");
  app.add_option("--report", s.report, "write the JSON report here");
  app.add_option("--svg", s.svg, "write the braid diagram here");
  app.add_option("--diagnostics", s.diagnostics, "directory for CSV diagnostics");
  app.add_option("--tolerance", s.tolerance, "agreement tolerance between pipelines")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("-q,--quiet", quiet, "no progress log");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!eps_sweep.empty()) s.epsilon_sweep = parse_double_list(eps_sweep);
    if (!t_sweep.empty()) s.t_sweep = parse_rational_list(t_sweep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  std::ostream null(nullptr);
  const RunResult r = run_scenario_file(scenario, s, quiet ? null : std::clog);
  for (const auto& e : r.errors) std::cerr << "error: " << e << '\n';
  if (r.report_path.empty() && !r.report.is_null()) std::cout << r.report.dump(2) << '\n';
  return r.exit_code;
}

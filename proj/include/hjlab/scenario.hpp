#pragma once

#include <string>
#include <vector>

#include "hjlab/hamiltonian.hpp"
#include "hjlab/solvers.hpp"

namespace hjlab {

struct ScenarioConfig {
  std::string name = "scenario";
  std::string hamiltonian;    // model id, e.g. "quadratic" or "poly:0,0,0.5"
  std::string initial;        // e.g. "neg-abs", "min-affine:...", "grid:<file>"
  int dim = 1;
  Grid grid;
  std::vector<double> times;  // nonnegative, increasing
  std::vector<std::string> solvers;  // subset of the provenance names
  double dt = 1e-3;
  int k = 16;                 // iterated-k substep count
  int sites = 81;             // family site density per axis
  int dual_resolution = 201;  // hopf dual p-resolution
  double dual_p_range = 0.0;  // 0 -> derived from the initial Lipschitz bound
  double cfl = 0.45;
  double y_margin = 4.0;      // lax-oleinik search margin
  int lax_resolution = 801;
  bool check_entropy = false;
  std::string entropy_mode = "convex";
  double entropy_tol = 1e-6;
  double ordering_tol = 5e-2;
  std::string out_dir = ".";
};

struct RunOptions {
  bool assert_ordering = false;
  bool assert_entropy_pass = false;
  std::string out_dir;  // overrides config when nonempty
};

// Parses a JSON config document; throws ArgumentError on schema violations.
ScenarioConfig parse_scenario(const std::string& json_text);

// Returns the embedded config for a bundled scenario name, or "" if unknown.
std::string builtin_scenario_json(const std::string& name);
std::vector<std::string> builtin_scenario_names();

// Initial conditions addressable by id; throws ArgumentError on unknown ids.
InitialData make_initial(const std::string& id, int dim);
std::vector<std::string> initial_ids();

// Runs the scenario; emits CSV/dat files plus JSON reports into the output
// directory.  Returns the process exit code: 0 ok, 1 failed --assert,
// 2 validation error, 3 solver horizon/stability error.
int run_scenario(const ScenarioConfig& config, const RunOptions& opts,
                 std::string& diagnostics);

std::string list_builtins();

}  // namespace hjlab

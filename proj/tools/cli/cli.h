#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "indexcode/code_actions.h"
#include "indexcode/demand_graph.h"
#include "indexcode/traffic.h"

namespace indexcode::cli {

// Runs one command line (args excludes the program name). Returns the exit
// code: 0 on success, 2 on invalid input or usage, 1 on anything else.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// A preset name or a path to a graph / JSON spec file.
DemandGraph load_graph(const std::string& source);
TrafficSpec load_spec(const std::string& source);

// Relative paths land under $INDEXCODE_OUT_DIR when it is set.
std::string resolve_output(const std::string& path);

// "0.25,0.25,..." -> doubles.
std::vector<double> parse_vector(const std::string& text);

// One weight per type: 1 / (types sharing its destination set), so the
// scale is a per-destination rate.
std::vector<double> default_direction(const TrafficSpec& spec);

// Action set used by an algorithm: direct only for uncoded, templates for
// the max-weight rules, concrete actions otherwise.
ActionSet action_set_for(const TrafficSpec& spec, const std::string& algorithm,
                         const ActionSetOptions& options);

struct SweepConfig {
  TrafficSpec spec;
  std::vector<std::string> algorithms;
  std::vector<double> direction;
  // Exactly one of lambdas / rho is non-empty; both strictly increasing.
  std::vector<double> lambdas;
  std::vector<double> rho;
  long long frames = 200000;
  std::vector<uint64_t> seeds;
  ActionSetOptions options;
  std::string out;
  int jobs = 0;  // 0: hardware concurrency
};

SweepConfig parse_sweep_config(const std::string& json_text);

// Runs the grid and returns CSV rows (no header) in grid order: algorithm,
// then rate, then seed.
std::string run_sweep(const SweepConfig& config);

}  // namespace indexcode::cli

#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "indexcode/capacity.h"
#include "indexcode/clearance.h"
#include "indexcode/errors.h"
#include "indexcode/fixtures.h"
#include "indexcode/graph_io.h"
#include "indexcode/simulation.h"

namespace indexcode::cli {
namespace {

struct ActionFlags {
  std::string kinds = "all";
  int max_cycle_len = 3;
  bool relay_mode = false;

  void add_to(CLI::App* app) {
    app->add_option("--action-kinds", kinds,
                    "direct,cycle,double | all | uncoded")
        ->capture_default_str();
    app->add_option("--max-cycle-len", max_cycle_len, "Longest cycle action")
        ->capture_default_str();
    app->add_flag("--relay-mode", relay_mode, "Charge one uplink slot per cleared packet");
  }

  ActionSetOptions options() const {
    ActionSetOptions o = ActionSetOptions::from_kinds(kinds, max_cycle_len);
    o.relay_mode = relay_mode;
    return o;
  }
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

void append_csv(const std::string& path, const std::string& rows) {
  const std::string target = resolve_output(path);
  const auto parent = std::filesystem::path(target).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  const bool fresh = !std::filesystem::exists(target) || std::filesystem::file_size(target) == 0;
  std::ofstream file(target, std::ios::app);
  if (!file) throw ConfigError("cannot write " + target);
  if (fresh) file << csv_header();
  file << rows;
}

int cmd_solve_static(const std::string& graph_src, const std::string& solver,
                     int max_cycle_len, bool show_plan, std::ostream& out) {
  const DemandGraph g = load_graph(graph_src);
  CyclicSearchOptions opt;
  opt.max_cycle_len = max_cycle_len;
  const ClearanceResult r = solve_static(g, parse_static_solver(solver), opt);
  out << format_result(r) << "\n";
  if (show_plan && r.plan) out << format_plan(*r.plan);
  return 0;
}

int cmd_capacity(const std::string& spec_src, const std::string& direction_text,
                 bool direction_given, const std::string& rates_text,
                 const ActionFlags& flags, std::ostream& out) {
  const TrafficSpec spec = load_spec(spec_src);
  const ActionSet set = generate_action_set(spec, flags.options());
  auto print_cert = [&](const CapacityCertificate& c) {
    for (const auto& [id, p] : c.probabilities) out << id << ":" << fmt(p) << "\n";
  };
  if (!rates_text.empty()) {
    const auto cert = in_capacity_region(set, parse_vector(rates_text));
    out << "feasible=" << (cert ? "true" : "false") << "\n";
    if (cert) print_cert(*cert);
    return 0;
  }
  if (direction_given && direction_text.empty()) {
    throw ConfigError("--direction must not be empty");
  }
  const std::vector<double> direction =
      direction_given ? parse_vector(direction_text) : default_direction(spec);
  const double theta = max_scaled_rate(set, direction);
  double total = 0.0;
  for (double d : direction) total += d * theta;
  out << "theta=" << fmt(theta) << "\n";
  out << "total_rate=" << fmt(total) << "\n";
  out << "actions=" << set.size() << "\n";
  std::vector<double> rates(direction);
  for (double& r : rates) r *= 0.99 * theta;
  const auto cert = in_capacity_region(set, rates);
  out << "feasible=" << (cert ? "true" : "false") << "\n";
  if (cert) print_cert(*cert);
  return 0;
}

struct SimulateFlags {
  std::string spec;
  std::string algorithm = "mw2";
  double lambda = -1.0;
  std::string rates;
  std::string direction;
  long long frames = 200000;
  uint64_t seed = 1;
  std::string out;
  bool verify = false;
  size_t payload_bits = kDefaultPayloadBits;
  ActionFlags actions;
};

int cmd_simulate(const SimulateFlags& f, std::ostream& out) {
  SimConfig c;
  c.spec = load_spec(f.spec);
  c.algorithm = parse_algorithm(f.algorithm);
  c.actions = action_set_for(c.spec, f.algorithm, f.actions.options());
  if (!f.rates.empty()) {
    c.rates = parse_vector(f.rates);
  } else if (f.lambda >= 0.0) {
    c.rates = f.direction.empty() ? default_direction(c.spec) : parse_vector(f.direction);
    for (double& r : c.rates) r *= f.lambda;
    c.lambda_label = f.lambda;
  } else if (c.spec.rates) {
    c.rates = *c.spec.rates;
  } else {
    throw ConfigError("give --lambda, --rates, or rates in the spec");
  }
  if (c.algorithm == Algorithm::kStationary) {
    const auto cert = in_capacity_region(c.actions, c.rates);
    if (!cert) throw ConfigError("rates lie outside the capacity region of the action set");
    c.probabilities = cert->probabilities;
  }
  c.frames = f.frames;
  c.seed = f.seed;
  c.verify_execution = f.verify;
  c.payload_bits = f.payload_bits;
  const SimStats stats = run_simulation(c);
  const std::string row = csv_row(SimRow{c.lambda_label, f.algorithm, c.seed, stats});
  out << csv_header() << row;
  if (!f.out.empty()) append_csv(f.out, row);
  return 0;
}

int cmd_verify_code(const std::string& graph_src, const std::string& messages_path,
                    std::ostream& out) {
  const DemandGraph g = load_graph(graph_src);
  const std::vector<IdSet> messages = read_messages_file(messages_path);
  const bool ok = verify_linear_code(g, messages);
  out << "decodable=" << (ok ? "true" : "false") << " slots=" << messages.size();
  if (ok) {
    out << " bound="
        << acyclic_subgraph_bound(g, g.num_users() <= kMaxExactBoundUsers
                                         ? BoundMode::kExact
                                         : BoundMode::kGreedy);
  }
  out << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_flag,
              int jobs, std::ostream& out) {
  SweepConfig config = parse_sweep_config(read_text_file(config_path));
  if (!out_flag.empty()) config.out = out_flag;
  if (jobs > 0) config.jobs = jobs;
  const std::string rows = run_sweep(config);
  append_csv(config.out, rows);
  out << "wrote " << resolve_output(config.out) << "\n";
  return 0;
}

}  // namespace

DemandGraph load_graph(const std::string& source) {
  if (!std::filesystem::exists(source) && fixtures::is_graph_preset(source)) {
    return fixtures::graph_preset(source);
  }
  return read_graph_file(source);
}

TrafficSpec load_spec(const std::string& source) {
  if (!std::filesystem::exists(source) && fixtures::is_spec_preset(source)) {
    return fixtures::spec_preset(source);
  }
  return read_traffic_spec_file(source);
}

std::string resolve_output(const std::string& path) {
  const std::filesystem::path p(path);
  const char* dir = std::getenv("INDEXCODE_OUT_DIR");
  if (p.is_absolute() || dir == nullptr || *dir == '\0') return path;
  return (std::filesystem::path(dir) / p).string();
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ParseError("not a number: '" + item + "'");
    }
  }
  if (v.empty()) throw ConfigError("empty vector");
  return v;
}

std::vector<double> default_direction(const TrafficSpec& spec) {
  std::vector<double> d;
  for (const TrafficType& t : spec.types) {
    const auto same = std::count_if(spec.types.begin(), spec.types.end(),
                                    [&](const TrafficType& o) { return o.dest == t.dest; });
    d.push_back(1.0 / static_cast<double>(same));
  }
  return d;
}

ActionSet action_set_for(const TrafficSpec& spec, const std::string& algorithm,
                         const ActionSetOptions& options) {
  ActionSetOptions o = options;
  if (algorithm == "uncoded") {
    o.include_direct = true;
    o.max_cycle_len = 0;
    o.include_double_cycle = false;
  } else if (algorithm == "mw1" || algorithm == "mw2") {
    o.template_cycles = true;
  }
  return generate_action_set(spec, o);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Dynamic index coding for a broadcast station", "indexcode"};
  app.require_subcommand(1);

  std::string graph, solver = "auto", spec, direction, rates, messages, config, sweep_out;
  int max_cycle_len = 0, jobs = 0;
  bool show_plan = false;

  auto* solve = app.add_subcommand("solve-static", "Minimum clearance time of a static batch");
  solve->add_option("--graph", graph, "Graph file or preset")->required();
  solve->add_option("--solver", solver, "auto|bound|disjoint|two-user|relay3|exhaustive")
      ->capture_default_str();
  solve->add_option("--max-cycle-len", max_cycle_len, "Longest cycle for exhaustive search");
  solve->add_flag("--plan", show_plan, "Print the coding plan");

  ActionFlags cap_flags;
  auto* cap = app.add_subcommand("capacity", "Capacity region boundary and certificate");
  cap->add_option("--spec", spec, "Traffic spec JSON or preset")->required();
  auto* dir_opt = cap->add_option("--direction", direction, "Comma-separated direction");
  cap->add_option("--rates", rates, "Check these rates instead of probing the boundary");
  cap_flags.add_to(cap);

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "One simulation run, CSV on stdout");
  simulate->add_option("--spec", sim.spec, "Traffic spec JSON or preset")->required();
  simulate->add_option("--algorithm", sim.algorithm, "mw1|mw2|stationary|uncoded")
      ->capture_default_str();
  simulate->add_option("--lambda", sim.lambda, "Scale applied to the direction");
  simulate->add_option("--rates", sim.rates, "Comma-separated per-type rates");
  simulate->add_option("--direction", sim.direction, "Comma-separated direction");
  simulate->add_option("--frames", sim.frames, "Frames R")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  simulate->add_option("--out", sim.out, "Append the row to this CSV");
  simulate->add_flag("--verify-execution", sim.verify, "Decode every frame over payloads");
  simulate->add_option("--payload-bits", sim.payload_bits, "Payload length B");
  sim.actions.add_to(simulate);

  auto* sweep = app.add_subcommand("sweep", "Rate grid x seeds x algorithms to CSV");
  sweep->add_option("--config", config, "Sweep JSON")->required();
  sweep->add_option("--out", sweep_out, "CSV path (overrides the config)");
  sweep->add_option("--jobs", jobs, "Worker threads");

  auto* verify = app.add_subcommand("verify-code", "Check an XOR code decodes");
  verify->add_option("--graph", graph, "Graph file or preset")->required();
  verify->add_option("--messages", messages, "One XOR subset per line")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve_static(graph, solver, max_cycle_len, show_plan, out);
    if (*cap) return cmd_capacity(spec, direction, dir_opt->count() > 0, rates, cap_flags, out);
    if (*simulate) return cmd_simulate(sim, out);
    if (*sweep) return cmd_sweep(config, sweep_out, jobs, out);
    if (*verify) return cmd_verify_code(graph, messages, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "fatal: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace indexcode::cli

#include <algorithm>
#include <atomic>
#include <mutex>
#include <optional>
#include <json.hpp>
#include <thread>

#include "cli.h"
#include "indexcode/capacity.h"
#include "indexcode/errors.h"
#include "indexcode/simulation.h"

namespace indexcode::cli {
namespace {

void check_increasing(const std::vector<double>& grid, const char* name) {
  for (size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw ConfigError(std::string(name) + " grid must be strictly increasing");
    }
  }
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& json_text) {
  SweepConfig c;
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (j.contains("workload") == j.contains("spec")) {
      throw ConfigError("sweep config needs exactly one of 'workload' and 'spec'");
    }
    c.spec = load_spec(j.contains("workload") ? j.at("workload").get<std::string>()
                                              : j.at("spec").get<std::string>());
    c.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    if (j.contains("lambdas")) c.lambdas = j.at("lambdas").get<std::vector<double>>();
    if (j.contains("rho")) c.rho = j.at("rho").get<std::vector<double>>();
    c.direction = j.contains("direction") ? j.at("direction").get<std::vector<double>>()
                                          : default_direction(c.spec);
    c.frames = j.value("frames", c.frames);
    c.seeds = j.at("seeds").get<std::vector<uint64_t>>();
    c.options = ActionSetOptions::from_kinds(j.value("action_kinds", std::string("all")),
                                             j.value("max_cycle_len", 3));
    c.options.relay_mode = j.value("relay_mode", false);
    c.out = j.value("out", std::string("sweep.csv"));
    c.jobs = j.value("jobs", 0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sweep config: ") + e.what());
  }
  if (c.algorithms.empty()) throw ConfigError("sweep needs at least one algorithm");
  for (const std::string& a : c.algorithms) parse_algorithm(a);
  if (c.lambdas.empty() == c.rho.empty()) {
    throw ConfigError("sweep needs exactly one of 'lambdas' and 'rho'");
  }
  check_increasing(c.lambdas, "lambda");
  check_increasing(c.rho, "rho");
  if (c.seeds.empty()) throw ConfigError("sweep needs at least one seed");
  if (c.frames < 1) throw ConfigError("frames must be at least 1");
  if (static_cast<int>(c.direction.size()) != c.spec.num_types()) {
    throw ConfigError("direction length must equal the number of types");
  }
  return c;
}

std::string run_sweep(const SweepConfig& config) {
  struct Task {
    SimConfig sim;
    std::string algorithm;
  };
  std::vector<Task> tasks;
  for (const std::string& name : config.algorithms) {
    const Algorithm algorithm = parse_algorithm(name);
    const ActionSet run_set = action_set_for(config.spec, name, config.options);
    // Boundary of the concrete counterpart: scales rho, seeds stationary.
    ActionSetOptions concrete = config.options;
    if (name == "uncoded") {
      concrete.max_cycle_len = 0;
      concrete.include_double_cycle = false;
      concrete.include_direct = true;
    }
    std::optional<BoundaryProbe> boundary;
    if (!config.rho.empty() || algorithm == Algorithm::kStationary) {
      boundary = probe_boundary(generate_action_set(config.spec, concrete), config.direction);
    }
    const std::vector<double>& grid = config.rho.empty() ? config.lambdas : config.rho;
    for (double g : grid) {
      const double lambda = config.rho.empty() ? g : g * boundary->theta;
      for (uint64_t seed : config.seeds) {
        Task t;
        t.algorithm = name;
        t.sim.spec = config.spec;
        t.sim.actions = algorithm == Algorithm::kStationary
                            ? generate_action_set(config.spec, concrete)
                            : run_set;
        t.sim.algorithm = algorithm;
        t.sim.rates = config.direction;
        for (double& r : t.sim.rates) r *= lambda;
        if (boundary && algorithm == Algorithm::kStationary) {
          t.sim.probabilities = boundary->certificate.probabilities;
        }
        t.sim.frames = config.frames;
        t.sim.seed = seed;
        t.sim.lambda_label = lambda;
        tasks.push_back(std::move(t));
      }
    }
  }

  // Rows land in grid order whatever order the workers finish in.
  std::vector<std::string> rows(tasks.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (size_t k = next++; k < tasks.size(); k = next++) {
      try {
        const SimStats stats = run_simulation(tasks[k].sim);
        rows[k] = csv_row(SimRow{tasks[k].sim.lambda_label, tasks[k].algorithm,
                                 tasks[k].sim.seed, stats});
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const size_t n_workers =
      std::min<size_t>(tasks.size(), config.jobs > 0 ? config.jobs : hw);
  std::vector<std::thread> pool;
  for (size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::string out;
  for (const std::string& r : rows) out += r;
  return out;
}

}  // namespace indexcode::cli

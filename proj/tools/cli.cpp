#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dvrp/construction.hpp"
#include "dvrp/dynamic.hpp"
#include "dvrp/harness.hpp"
#include "dvrp/improvement.hpp"
#include "dvrp/io.hpp"

namespace dvrp::cli {

namespace {

using nlohmann::json;

// Flag values as parsed; a flag that was not given falls back to the
// config file, then to the built-in default.
struct Flags {
  std::string config;
  std::string instance;
  std::string construction;
  std::string improvement;
  std::string out;
  std::string format;
  std::string fleet_policy;
  double time_limit = 0.0;
  double speed = 1.0;
  double horizon = 0.0;
  std::uint64_t max_iters = 0;
  std::uint64_t stall_iters = 0;
  std::uint64_t seed = 0;
  int reps = 0;
  int static_count = 0;
  int dynamic_count = 0;
  int capacity = 0;
  int fleet_size = 0;
  unsigned jobs = 0;
  bool ignore_release = false;
};

class Settings {
 public:
  Settings(const CLI::App& command, json config)
      : command_(command), config_(std::move(config)) {
    if (!config_.is_object()) throw InputError("config file must hold a JSON object");
    const auto it = config_.find("improvement");
    if (it != config_.end() && it->is_object()) {
      section_ = *it;
      config_.erase(it);
      if (section_.contains("method")) {
        config_["improvement"] = section_["method"];
        section_.erase("method");
      }
    }
  }

  template <typename T>
  T get(const std::string& flag, const std::string& key, const T& flag_value,
        const T& fallback) const {
    if (command_.count("--" + flag) > 0) return flag_value;
    for (const json* doc : {&section_, &config_}) {
      const auto it = doc->find(key);
      if (it == doc->end()) continue;
      try {
        return it->template get<T>();
      } catch (const json::exception&) {
        throw InputError("config key \"" + key + "\" has the wrong type");
      }
    }
    return fallback;
  }

  ImprovementParams params() const {
    ImprovementParams params;
    // Budget keys may sit in the section too; everything else must be a parameter.
    json values = section_;
    for (const char* key : {"time_limit", "max_iters", "stall_iters", "seed"}) values.erase(key);
    read_improvement_params(values, params);
    return params;
  }

 private:
  const CLI::App& command_;
  json config_;
  json section_ = json::object();
};

Settings load_settings(const CLI::App& command, const Flags& flags) {
  if (flags.config.empty()) return Settings(command, json::object());
  return Settings(command, read_json_file(flags.config));
}

ConstructionMethod construction_of(const Settings& s, const Flags& f) {
  const auto name = s.get<std::string>("construction", "construction", f.construction, "savings");
  const auto method = parse_construction_method(name);
  if (!method) throw InputError("unknown construction method \"" + name + "\"");
  return *method;
}

std::optional<ImprovementMethod> improvement_of(const Settings& s, const Flags& f,
                                                const std::string& fallback) {
  const auto name = s.get<std::string>("improvement", "improvement", f.improvement, fallback);
  if (name == "none") return std::nullopt;
  const auto method = parse_improvement_method(name);
  if (!method) throw InputError("unknown improvement method \"" + name + "\"");
  return *method;
}

// A zero limit means "no limit".
ImprovementBudget budget_of(const Settings& s, const Flags& f,
                            const ImprovementBudget& defaults) {
  ImprovementBudget budget = defaults;
  const double time_limit = s.get<double>("time-limit", "time_limit", f.time_limit,
                                          defaults.time_limit_seconds.value_or(0.0));
  if (time_limit < 0.0) throw InputError("time limit must not be negative");
  budget.time_limit_seconds =
      time_limit > 0.0 ? std::optional<double>(time_limit) : std::nullopt;
  const auto iters = s.get<std::uint64_t>("max-iters", "max_iters", f.max_iters,
                                          defaults.max_iterations.value_or(0));
  budget.max_iterations = iters > 0 ? std::optional<std::uint64_t>(iters) : std::nullopt;
  budget.stall_iterations =
      s.get<std::uint64_t>("stall-iters", "stall_iters", f.stall_iters, defaults.stall_iterations);
  budget.seed = s.get<std::uint64_t>("seed", "seed", f.seed, defaults.seed);
  if (!budget.time_limit_seconds && !budget.max_iterations) {
    throw InputError("either a time limit or an iteration limit is required");
  }
  return budget;
}

std::string combo_label(ConstructionMethod c, const std::optional<ImprovementMethod>& i) {
  return std::string(to_string(c)) + "+" + (i ? std::string(to_string(*i)) : "none");
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

void add_common(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "JSON run-config file; flags override it");
  cmd.add_option("--construction", f.construction,
                 "savings | path-cheapest-arc | global-cheapest-arc");
  cmd.add_option("--improvement", f.improvement,
                 "guided-local-search | simulated-annealing | tabu-search | none");
  cmd.add_option("--time-limit", f.time_limit, "seconds per improvement run, 0 for none");
  cmd.add_option("--max-iters", f.max_iters, "iteration cap per improvement run, 0 for none");
  cmd.add_option("--stall-iters", f.stall_iters,
                 "stop after this many iterations without improvement, 0 for never");
  cmd.add_option("--seed", f.seed, "random seed");
}

int cmd_solve(const CLI::App& cmd, const Flags& f, std::ostream& out, std::ostream& err) {
  const Settings s = load_settings(cmd, f);
  const auto path = s.get<std::string>("instance", "instance", f.instance, "");
  if (path.empty()) throw InputError("--instance is required");
  Instance instance = read_instance(path);
  if (!instance.all_static()) {
    if (!s.get<bool>("ignore-release", "ignore_release", f.ignore_release, false)) {
      throw InputError("instance has dynamic customers; use simulate or --ignore-release");
    }
    std::vector<Customer> customers(instance.customers().begin(), instance.customers().end());
    for (Customer& c : customers) c.release_time = 0.0;
    instance = Instance(instance.depot(), instance.fleet_size(), instance.capacity(),
                        std::move(customers));
  }
  const ConstructionMethod construction = construction_of(s, f);
  const auto improvement = improvement_of(s, f, "tabu-search");
  const ImprovementBudget budget = budget_of(s, f, ImprovementBudget{});
  const auto policy_name = s.get<std::string>("fleet-policy", "fleet_policy", f.fleet_policy, "check");
  FleetPolicy policy;
  if (policy_name == "check") {
    policy = FleetPolicy::CheckAfter;
  } else if (policy_name == "repair") {
    policy = FleetPolicy::Repair;
  } else {
    throw InputError("unknown fleet policy \"" + policy_name + "\"");
  }

  const auto started = std::chrono::steady_clock::now();
  const ImprovementResult result =
      solve_static(instance, construction, improvement, budget, s.params(), policy);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  const auto out_path = s.get<std::string>("out", "out", f.out, "");
  emit(out_path, to_json(result.solution).dump(2) + "\n", out);
  std::ostream& summary = out_path.empty() ? err : out;
  summary << "cost=" << fixed(result.solution.cost, 2)
          << " combo=" << combo_label(construction, improvement)
          << " trips=" << result.solution.trips.size() << " wall=" << fixed(wall, 3) << "s\n";
  return kOk;
}

int cmd_simulate(const CLI::App& cmd, const Flags& f, std::ostream& out, std::ostream& err) {
  const Settings s = load_settings(cmd, f);
  const auto path = s.get<std::string>("instance", "instance", f.instance, "");
  if (path.empty()) throw InputError("--instance is required");
  const Instance instance = read_instance(path);
  SimulationConfig config;
  config.construction = construction_of(s, f);
  config.improvement = improvement_of(s, f, "tabu-search");
  config.budget = budget_of(s, f, ImprovementBudget{});
  config.params = s.params();
  config.speed = s.get<double>("speed", "speed", f.speed, 1.0);
  if (!(config.speed > 0.0)) throw InputError("speed must be positive");

  const SimulationResult result = run_simulation(instance, config);
  std::ostringstream timeline;
  write_timeline_jsonl(timeline, result.timeline);
  const auto out_path = s.get<std::string>("out", "out", f.out, "");
  emit(out_path, timeline.str(), out);
  std::ostream& summary = out_path.empty() ? err : out;
  summary << "cost=" << fixed(result.total_cost, 2)
          << " combo=" << combo_label(config.construction, config.improvement)
          << " reoptimizations=" << result.reoptimizations
          << " solver_wall=" << fixed(result.solver_seconds, 3) << "s\n";
  return kOk;
}

int cmd_bench(const CLI::App& cmd, const Flags& f, std::ostream& out, std::ostream& err) {
  const Settings s = load_settings(cmd, f);
  PortfolioConfig config;
  config.reps = s.get<int>("reps", "reps", f.reps, config.reps);
  if (config.reps < 1) throw InputError("reps must be at least 1");
  config.seed = s.get<std::uint64_t>("seed", "seed", f.seed, config.seed);
  config.budget = budget_of(s, f, config.budget);
  config.params = s.params();
  config.speed = s.get<double>("speed", "speed", f.speed, config.speed);
  if (!(config.speed > 0.0)) throw InputError("speed must be positive");
  config.jobs = s.get<unsigned>("jobs", "jobs", f.jobs, 0u);
  const auto format = s.get<std::string>("format", "format", f.format, "both");
  if (format != "csv" && format != "json" && format != "both") {
    throw InputError("format must be csv or json");
  }
  const auto prefix = s.get<std::string>("out", "out", f.out, "report");

  std::vector<PortfolioRow> rows;
  int failures = 0;
  for (const DatasetSpec& spec : default_datasets(config.seed)) {
    const Instance instance = generate_instance(spec);
    try {
      rows.push_back(run_portfolio(instance, spec, config));
      err << spec.name << ": best " << rows.back().best_combo << " avg "
          << fixed(rows.back().stats.mean, 2) << "\n";
    } catch (const InfeasibleError& e) {
      ++failures;
      err << spec.name << ": failed: " << e.what() << "\n";
    }
  }
  if (format != "json") {
    std::ostringstream csv;
    write_report_csv(csv, rows);
    write_text_file(prefix + ".csv", csv.str());
    out << "wrote " << prefix << ".csv\n";
  }
  if (format != "csv") {
    std::ostringstream doc;
    write_report_json(doc, rows, config);
    write_text_file(prefix + ".json", doc.str());
    out << "wrote " << prefix << ".json\n";
  }
  return failures > 0 ? kInfeasible : kOk;
}

int cmd_gen(const CLI::App& cmd, const Flags& f, std::ostream& out) {
  const Settings s = load_settings(cmd, f);
  DatasetSpec spec;
  spec.static_count = s.get<int>("static", "static", f.static_count, spec.static_count);
  spec.dynamic_count = s.get<int>("dynamic", "dynamic", f.dynamic_count, spec.dynamic_count);
  spec.seed = s.get<std::uint64_t>("seed", "seed", f.seed, spec.seed);
  spec.capacity = s.get<int>("capacity", "capacity", f.capacity, spec.capacity);
  spec.fleet_size = s.get<int>("fleet-size", "fleet_size", f.fleet_size, spec.fleet_size);
  spec.horizon = s.get<double>("horizon", "horizon", f.horizon, spec.horizon);
  spec.demand_max = std::min(spec.demand_max, spec.capacity);
  const Instance instance = generate_instance(spec);
  emit(s.get<std::string>("out", "out", f.out, ""), to_json(instance).dump(2) + "\n", out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamic vehicle routing: two-stage solver, simulator and benchmark"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* solve = app.add_subcommand("solve", "Solve a static instance");
  add_common(*solve, f);
  solve->add_option("--instance", f.instance, "instance JSON file");
  solve->add_option("--out", f.out, "solution JSON file (default: stdout)");
  solve->add_option("--fleet-policy", f.fleet_policy, "check | repair");
  solve->add_flag("--ignore-release", f.ignore_release, "treat every customer as static");

  CLI::App* simulate = app.add_subcommand("simulate", "Replay a dynamic instance");
  add_common(*simulate, f);
  simulate->add_option("--instance", f.instance, "instance JSON file");
  simulate->add_option("--speed", f.speed, "vehicle speed, distance per time unit");
  simulate->add_option("--out", f.out, "timeline JSON-lines file (default: stdout)");

  CLI::App* bench = app.add_subcommand("bench", "Run the portfolio on the nine datasets");
  add_common(*bench, f);
  bench->add_option("--reps", f.reps, "runs per combination");
  bench->add_option("--speed", f.speed, "vehicle speed");
  bench->add_option("--jobs", f.jobs, "worker threads (default: all cores)");
  bench->add_option("--out", f.out, "report path prefix (default: report)");
  bench->add_option("--format", f.format, "csv | json (default: both)");

  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--config", f.config, "JSON run-config file; flags override it");
  gen->add_option("--static", f.static_count, "static customers");
  gen->add_option("--dynamic", f.dynamic_count, "dynamic customers");
  gen->add_option("--seed", f.seed, "generator seed");
  gen->add_option("--capacity", f.capacity, "vehicle capacity");
  gen->add_option("--fleet-size", f.fleet_size, "number of vehicles");
  gen->add_option("--horizon", f.horizon, "latest release time");
  gen->add_option("--out", f.out, "instance JSON file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(*solve, f, out, err);
    if (simulate->parsed()) return cmd_simulate(*simulate, f, out, err);
    if (bench->parsed()) return cmd_bench(*bench, f, out, err);
    return cmd_gen(*gen, f, out);
  } catch (const DemandExceedsCapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace dvrp::cli

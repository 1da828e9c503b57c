#include "dvrp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "dvrp/random.hpp"

namespace dvrp {

Instance generate_instance(const DatasetSpec& spec) {
  if (spec.static_count < 0 || spec.dynamic_count < 0 ||
      spec.static_count + spec.dynamic_count < 1) {
    throw InputError("dataset needs at least one customer");
  }
  if (spec.demand_min < 1 || spec.demand_max < spec.demand_min) {
    throw InputError("dataset demand range is empty or below 1");
  }
  if (spec.demand_max > spec.capacity) {
    throw InputError("dataset demand range exceeds vehicle capacity");
  }
  if (!(spec.coord_max >= spec.coord_min) || !(spec.horizon > 0.0)) {
    throw InputError("dataset coordinate range or horizon is invalid");
  }
  Rng rng(spec.seed);
  std::vector<Customer> customers;
  const int total = spec.static_count + spec.dynamic_count;
  customers.reserve(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) {
    Customer c;
    c.id = i + 1;
    c.location.x = rng.uniform(spec.coord_min, spec.coord_max);
    c.location.y = rng.uniform(spec.coord_min, spec.coord_max);
    c.demand = static_cast<int>(rng.uniform_int(spec.demand_min, spec.demand_max));
    const double u = rng.uniform01();
    c.release_time = i < spec.static_count ? 0.0 : spec.horizon * (1.0 - u);
    customers.push_back(c);
  }
  const double mid = 0.5 * (spec.coord_min + spec.coord_max);
  return Instance({mid, mid}, spec.fleet_size, spec.capacity, std::move(customers));
}

std::vector<DatasetSpec> default_datasets(std::uint64_t master_seed) {
  constexpr int kSizes[] = {20, 50, 100};
  constexpr const char* kNames[] = {"small", "medium", "large"};
  std::vector<DatasetSpec> specs;
  for (int s = 0; s < 3; ++s) {
    for (int d = 0; d < 3; ++d) {
      DatasetSpec spec;
      spec.name = std::string(kNames[s]) + "-d" + std::to_string(kSizes[d]);
      spec.static_count = kSizes[s];
      spec.dynamic_count = kSizes[d];
      spec.seed = derive_seed(master_seed, specs.size());
      specs.push_back(spec);
    }
  }
  return specs;
}

std::string Combo::label() const {
  return std::string(to_string(construction)) + "+" + std::string(to_string(improvement));
}

std::vector<Combo> all_combos() {
  std::vector<Combo> combos;
  for (ConstructionMethod c : kAllConstructionMethods) {
    for (ImprovementMethod i : kAllImprovementMethods) combos.push_back({c, i});
  }
  std::sort(combos.begin(), combos.end(),
            [](const Combo& a, const Combo& b) { return a.label() < b.label(); });
  return combos;
}

namespace {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results go to
// caller-owned slots, so the outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

PortfolioRow run_portfolio(const Instance& instance, const DatasetSpec& dataset,
                           const PortfolioConfig& config) {
  if (config.reps < 1) throw InputError("reps must be at least 1");
  if (config.combos.empty()) throw InputError("portfolio has no combos");

  PortfolioRow row;
  row.dataset = dataset.name;
  row.static_count = dataset.static_count;
  row.dynamic_count = dataset.dynamic_count;

  std::vector<Combo> combos = config.combos;
  std::sort(combos.begin(), combos.end(),
            [](const Combo& a, const Combo& b) { return a.label() < b.label(); });
  const auto reps = static_cast<std::size_t>(config.reps);
  for (const Combo& combo : combos) {
    ComboResult result;
    result.combo = combo;
    result.reps.resize(reps);
    row.combos.push_back(std::move(result));
  }
  for (ConstructionMethod m : kAllConstructionMethods) {
    row.construction_only.push_back({m, std::nullopt, {}});
  }

  const std::size_t combo_tasks = combos.size() * reps;
  parallel_for(combo_tasks + row.construction_only.size(), config.jobs, [&](std::size_t task) {
    SimulationConfig sim;
    sim.budget = config.budget;
    sim.params = config.params;
    sim.speed = config.speed;
    if (task < combo_tasks) {
      RepResult& rep = row.combos[task / reps].reps[task % reps];
      const Combo& combo = row.combos[task / reps].combo;
      sim.construction = combo.construction;
      sim.improvement = combo.improvement;
      rep.seed = derive_seed(config.seed, task % reps);
      sim.budget.seed = rep.seed;
      try {
        const SimulationResult r = run_simulation(instance, sim);
        rep.cost = r.total_cost;
        rep.reoptimizations = r.reoptimizations;
      } catch (const InfeasibleError& e) {
        rep.error = e.what();
      }
    } else {
      ConstructionOnly& only = row.construction_only[task - combo_tasks];
      sim.construction = only.method;
      sim.improvement = std::nullopt;
      try {
        only.cost = run_simulation(instance, sim).total_cost;
      } catch (const InfeasibleError& e) {
        only.error = e.what();
      }
    }
  });

  const ComboResult* best = nullptr;
  for (ComboResult& c : row.combos) {
    std::vector<double> costs;
    for (const RepResult& r : c.reps) {
      if (r.cost) costs.push_back(*r.cost);
    }
    if (costs.empty()) {
      row.excluded.push_back(c.combo.label());
      continue;
    }
    c.stats = summarize_stats(costs);
    if (!best || c.stats->mean < best->stats->mean ||
        (c.stats->mean == best->stats->mean && c.stats->min < best->stats->min)) {
      best = &c;
    }
  }
  if (!best) throw InfeasibleError("no combination produced a solution on " + dataset.name);

  row.best_combo = best->combo.label();
  row.stats = *best->stats;
  for (const ConstructionOnly& only : row.construction_only) {
    if (only.method != best->combo.construction) continue;
    if (!only.cost) throw InfeasibleError("baseline failed on " + dataset.name + ": " + only.error);
    row.baseline_cost = *only.cost;
  }
  row.improvement_pct = improvement_percent(row.baseline_cost, row.stats.mean);
  return row;
}

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_report_csv(std::ostream& out, std::span<const PortfolioRow> rows) {
  out << "dataset,static,dynamic,avg_cost,min_cost,best_combo,baseline_cost,"
         "improvement_pct,std_dev,ci95,reps\n";
  for (const PortfolioRow& r : rows) {
    out << r.dataset << ',' << r.static_count << ',' << r.dynamic_count << ','
        << fixed2(r.stats.mean) << ',' << fixed2(r.stats.min) << ',' << r.best_combo << ','
        << fixed2(r.baseline_cost) << ',' << fixed2(r.improvement_pct) << ','
        << (r.stats.std_dev ? fixed2(*r.stats.std_dev) : "") << ','
        << (r.stats.ci95 ? fixed2(*r.stats.ci95) : "") << ',' << r.stats.count << '\n';
  }
}

namespace {

nlohmann::json stats_json(const SummaryStats& s) {
  nlohmann::json j = {{"count", s.count}, {"mean", s.mean}, {"min", s.min}, {"max", s.max}};
  j["std_dev"] = s.std_dev ? nlohmann::json(*s.std_dev) : nlohmann::json(nullptr);
  j["ci95"] = s.ci95 ? nlohmann::json(*s.ci95) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

void write_report_json(std::ostream& out, std::span<const PortfolioRow> rows,
                       const PortfolioConfig& config) {
  using nlohmann::json;
  json budget = {{"stall_iterations", config.budget.stall_iterations}};
  budget["time_limit_seconds"] = optional_json(config.budget.time_limit_seconds);
  budget["max_iterations"] = config.budget.max_iterations
                                 ? json(*config.budget.max_iterations)
                                 : json(nullptr);
  json doc = {{"config",
               {{"reps", config.reps},
                {"seed", config.seed},
                {"speed", config.speed},
                {"budget", budget},
                {"params",
                 {{"sa_initial_temperature_factor", config.params.sa_initial_temperature_factor},
                  {"sa_cooling_factor", config.params.sa_cooling_factor},
                  {"sa_cooling_interval", config.params.sa_cooling_interval},
                  {"gls_lambda_factor", config.params.gls_lambda_factor},
                  {"tabu_tenure", config.params.tabu_tenure}}}}},
              {"rows", json::array()}};
  for (const PortfolioRow& r : rows) {
    json combos = json::array();
    for (const ComboResult& c : r.combos) {
      json reps = json::array();
      for (const RepResult& rep : c.reps) {
        json jr = {{"seed", rep.seed},
                   {"cost", optional_json(rep.cost)},
                   {"reoptimizations", rep.reoptimizations}};
        if (!rep.error.empty()) jr["error"] = rep.error;
        reps.push_back(std::move(jr));
      }
      combos.push_back({{"combo", c.combo.label()},
                        {"stats", c.stats ? stats_json(*c.stats) : json(nullptr)},
                        {"reps", std::move(reps)}});
    }
    json only = json::array();
    for (const ConstructionOnly& o : r.construction_only) {
      json jo = {{"construction", std::string(to_string(o.method))},
                 {"cost", optional_json(o.cost)}};
      if (!o.error.empty()) jo["error"] = o.error;
      only.push_back(std::move(jo));
    }
    doc["rows"].push_back({{"dataset", r.dataset},
                           {"static", r.static_count},
                           {"dynamic", r.dynamic_count},
                           {"best_combo", r.best_combo},
                           {"avg_cost", r.stats.mean},
                           {"min_cost", r.stats.min},
                           {"baseline_cost", r.baseline_cost},
                           {"improvement_pct", r.improvement_pct},
                           {"stats", stats_json(r.stats)},
                           {"construction_only", std::move(only)},
                           {"excluded", r.excluded},
                           {"combos", std::move(combos)}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace dvrp

#include <benchmark/benchmark.h>

#include "dvrp/construction.hpp"
#include "dvrp/dynamic.hpp"
#include "dvrp/harness.hpp"
#include "dvrp/improvement.hpp"

namespace {

dvrp::Instance sized(int n) {
  dvrp::DatasetSpec spec;
  spec.static_count = n;
  spec.dynamic_count = 0;
  spec.fleet_size = n;
  spec.seed = 43;
  return dvrp::generate_instance(spec);
}

// Fixed iteration count, so the rate is iterations per second.
void BM_Improve(benchmark::State& state, dvrp::ImprovementMethod method) {
  const dvrp::Instance instance = sized(static_cast<int>(state.range(0)));
  const dvrp::Solution start = dvrp::construct(instance, dvrp::ConstructionMethod::Savings);
  const dvrp::ImprovementBudget budget{std::nullopt, 200, 0, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dvrp::improve(instance, start, method, budget));
  }
  state.SetItemsProcessed(state.iterations() * 200);
}

BENCHMARK_CAPTURE(BM_Improve, tabu_search, dvrp::ImprovementMethod::TabuSearch)
    ->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Improve, simulated_annealing, dvrp::ImprovementMethod::SimulatedAnnealing)
    ->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Improve, guided_local_search, dvrp::ImprovementMethod::GuidedLocalSearch)
    ->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  dvrp::DatasetSpec spec;
  spec.static_count = static_cast<int>(state.range(0));
  spec.dynamic_count = static_cast<int>(state.range(0));
  spec.seed = 44;
  const dvrp::Instance instance = dvrp::generate_instance(spec);
  dvrp::SimulationConfig config;
  config.budget = {std::nullopt, 100, 0, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dvrp::run_simulation(instance, config));
  }
}

BENCHMARK(BM_Simulate)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

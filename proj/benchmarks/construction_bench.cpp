#include <benchmark/benchmark.h>

#include "dvrp/construction.hpp"
#include "dvrp/harness.hpp"

namespace {

dvrp::Instance sized(int n) {
  dvrp::DatasetSpec spec;
  spec.static_count = n;
  spec.dynamic_count = 0;
  spec.fleet_size = n;
  spec.seed = 42;
  return dvrp::generate_instance(spec);
}

void BM_Construct(benchmark::State& state, dvrp::ConstructionMethod method) {
  const dvrp::Instance instance = sized(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dvrp::construct(instance, method));
  }
  state.SetComplexityN(state.range(0));
}

BENCHMARK_CAPTURE(BM_Construct, savings, dvrp::ConstructionMethod::Savings)
    ->RangeMultiplier(2)->Range(25, 400)->Complexity();
BENCHMARK_CAPTURE(BM_Construct, path_cheapest_arc, dvrp::ConstructionMethod::PathCheapestArc)
    ->RangeMultiplier(2)->Range(25, 400)->Complexity();
BENCHMARK_CAPTURE(BM_Construct, global_cheapest_arc, dvrp::ConstructionMethod::GlobalCheapestArc)
    ->RangeMultiplier(2)->Range(25, 200)->Complexity();

}  // namespace

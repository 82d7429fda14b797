#include <benchmark/benchmark.h>

#include "tsplan/modelgen.hpp"
#include "tsplan/planner_flat.hpp"
#include "tsplan/planner_tree.hpp"

namespace {

using namespace tsplan;

TroubleshootingModel make_model(int actions, int depth) {
  GeneratorParams params;
  params.actions = actions;
  params.clusters = std::max(1, actions / 100);
  params.max_depth = depth;
  params.seed = 1337;
  return random_model(params);
}

void BM_PlanTree(benchmark::State& state) {
  auto model = make_model(int(state.range(0)), 6);
  for (auto _ : state) {
    auto plan = plan_tree(model);
    benchmark::DoNotOptimize(plan.result.ecr);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PlanTree)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void BM_PlanFlat(benchmark::State& state) {
  auto model = make_model(int(state.range(0)), 1);
  for (auto _ : state) {
    auto plan = plan_flat(model);
    benchmark::DoNotOptimize(plan.ecr);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PlanFlat)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void BM_Absorption(benchmark::State& state) {
  auto model = make_model(int(state.range(0)), 6);
  for (auto _ : state) {
    auto root = induce_absorption(model);
    benchmark::DoNotOptimize(root.size());
  }
}
BENCHMARK(BM_Absorption)->RangeMultiplier(10)->Range(1000, 100000);

}  // namespace

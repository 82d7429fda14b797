#include <benchmark/benchmark.h>

#include <numeric>

#include "tsplan/modelgen.hpp"
#include "tsplan/simulate.hpp"

namespace {

using namespace tsplan;

void BM_EstimateEcr(benchmark::State& state) {
  GeneratorParams params;
  params.actions = 50;
  params.clusters = 5;
  params.max_depth = 3;
  params.seed = 7;
  auto model = random_model(params);
  std::vector<ActionIndex> seq(model.action_count());
  std::iota(seq.begin(), seq.end(), 0);

  const auto trials = std::uint64_t(state.range(0));
  for (auto _ : state) {
    auto summary = estimate_ecr(model, seq, trials, 42);
    benchmark::DoNotOptimize(summary.mean_cost);
  }
}
BENCHMARK(BM_EstimateEcr)->RangeMultiplier(10)->Range(1000, 100000);

}  // namespace

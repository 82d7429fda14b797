#include <benchmark/benchmark.h>

#include <numeric>

#include "tsplan/ecr.hpp"
#include "tsplan/modelgen.hpp"

namespace {

using namespace tsplan;

void BM_EvaluateEcr(benchmark::State& state) {
  GeneratorParams params;
  params.actions = int(state.range(0));
  params.clusters = std::max(1, params.actions / 100);
  params.max_depth = 4;
  params.seed = 99;
  auto model = random_model(params);
  std::vector<ActionIndex> seq(model.action_count());
  std::iota(seq.begin(), seq.end(), 0);

  EcrScratch scratch;
  for (auto _ : state)
    benchmark::DoNotOptimize(ecr_value(model, seq, scratch));
}
BENCHMARK(BM_EvaluateEcr)->RangeMultiplier(10)->Range(100, 100000);

}  // namespace

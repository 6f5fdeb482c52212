#include <benchmark/benchmark.h>

#include "lefschetz/survey.hpp"

using namespace lefschetz;

namespace {

void BM_Survey(benchmark::State& state) {
  const SurveyParams params{.n = 5,
                            .d_min = 2,
                            .d_max = static_cast<int>(state.range(0)),
                            .p = 5,
                            .partition = PartitionFilter::parse("d1=2"),
                            .jobs = static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(survey(params));
}
BENCHMARK(BM_Survey)->Args({15, 1})->Args({25, 1})->Args({25, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

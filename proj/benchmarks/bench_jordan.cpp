#include <benchmark/benchmark.h>

#include "lefschetz/classifier.hpp"
#include "lefschetz/jordan_type.hpp"

using namespace lefschetz;

namespace {

void BM_DecomposeCold(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const std::vector<int> degrees{d, d - 1, d - 2, d - 3, d - 4};
  for (auto _ : state) {
    const JordanEngine engine(7);
    benchmark::DoNotOptimize(engine.decompose(degrees));
  }
}
BENCHMARK(BM_DecomposeCold)->Arg(10)->Arg(18)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_WlpAfterAdjoiningWarm(benchmark::State& state) {
  const JordanEngine engine(7);
  const std::vector<int> prefix{25, 21, 17, 13};
  const auto strings = engine.decompose(prefix);
  (void)engine.has_wlp(std::vector<int>{25, 21, 17, 13, 9});
  for (auto _ : state) benchmark::DoNotOptimize(engine.wlp_after_adjoining(strings, prefix, 9));
}
BENCHMARK(BM_WlpAfterAdjoiningWarm);

void BM_RuleEngine(benchmark::State& state) {
  const std::vector<int> degrees{2, 3, 7, 12, 19};
  for (auto _ : state) {
    const WlpRuleEngine rules(5);
    benchmark::DoNotOptimize(rules.classify(degrees));
  }
}
BENCHMARK(BM_RuleEngine);

void BM_ClassifySlp(benchmark::State& state) {
  const auto ci = MonomialCI::normalize({25, 19, 12, 7, 3}, 11);
  for (auto _ : state) benchmark::DoNotOptimize(classify_slp(ci));
}
BENCHMARK(BM_ClassifySlp);

}  // namespace

#include <benchmark/benchmark.h>

#include "lefschetz/algebra.hpp"
#include "lefschetz/rank_oracle.hpp"

using namespace lefschetz;

namespace {

// Middle-degree map by s for k uniform degrees of size d.
SparseMatrixModP middle_matrix(int n, int d, int p) {
  const std::vector<int> degrees(static_cast<std::size_t>(n), d);
  const auto ci = MonomialCI::normalize(degrees, p);
  return multiplication_matrix(ci, 1, (ci.socle_degree() - 1) / 2);
}

void BM_BuildMatrix(benchmark::State& state) {
  const std::vector<int> degrees(5, static_cast<int>(state.range(0)));
  const auto ci = MonomialCI::normalize(degrees, 5);
  const int i = (ci.socle_degree() - 1) / 2;
  for (auto _ : state) benchmark::DoNotOptimize(multiplication_matrix(ci, 1, i));
}
BENCHMARK(BM_BuildMatrix)->Arg(4)->Arg(6)->Arg(8);

void BM_SparseRank(benchmark::State& state) {
  const auto m = middle_matrix(5, static_cast<int>(state.range(0)), 5);
  state.counters["cols"] = static_cast<double>(m.cols());
  for (auto _ : state) benchmark::DoNotOptimize(rank_mod_p(m));
}
BENCHMARK(BM_SparseRank)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_DenseRank(benchmark::State& state) {
  const auto m = middle_matrix(5, static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(dense_rank_mod_p(m));
}
BENCHMARK(BM_DenseRank)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_VerifyWlp(benchmark::State& state) {
  const auto ci = MonomialCI::normalize({7, 6, 5, 4, 3}, 3);
  const OracleOptions options{.top_degree_only = state.range(0) != 0};
  for (auto _ : state) benchmark::DoNotOptimize(verify_wlp(ci, options));
}
BENCHMARK(BM_VerifyWlp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

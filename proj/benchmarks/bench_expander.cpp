// Microbenchmarks of the expander search kernels.

#include <benchmark/benchmark.h>

#include "sqgt/expander.hpp"

namespace {

void BM_RandomExpander(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto re = sqgt::random_expander(n, 2, seed++);
    benchmark::DoNotOptimize(re.graph.m_right());
  }
}
BENCHMARK(BM_RandomExpander)->Arg(30)->Arg(60)->Arg(120);

void BM_VerifyStrictExpansion(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = 2;
  const auto re = sqgt::random_expander(n, d, 7);
  const int smax = static_cast<int>(state.range(1));
  for (auto _ : state) {
    bool ok = sqgt::verify_strict_expansion(re.graph, smax, std::int64_t{1} << 30);
    benchmark::DoNotOptimize(ok);
  }
}
BENCHMARK(BM_VerifyStrictExpansion)->Args({30, 3})->Args({30, 4})->Args({60, 3})->Args({60, 4});

void BM_UniqueNeighbors(benchmark::State& state) {
  const auto re = sqgt::random_expander(60, 2, 7);
  std::vector<int> P = {0, 7, 19, 33, 41, 55};
  for (auto _ : state) {
    auto nu = sqgt::unique_neighbors(re.graph, P);
    benchmark::DoNotOptimize(nu.size());
  }
}
BENCHMARK(BM_UniqueNeighbors);

}  // namespace

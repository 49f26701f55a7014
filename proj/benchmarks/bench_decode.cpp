// Microbenchmarks of channel simulation and both decoders.

#include <benchmark/benchmark.h>

#include "sqgt/adaptive.hpp"
#include "sqgt/expander.hpp"
#include "sqgt/model.hpp"
#include "sqgt/nonadaptive.hpp"
#include "sqgt/oracle.hpp"

namespace {

struct AdaptiveFixture {
  sqgt::MergedScheme scheme;
  sqgt::DefectiveSet defectives;

  AdaptiveFixture() {
    const auto re = sqgt::random_expander(60, 2, 7);
    scheme = sqgt::build_merged(sqgt::to_binary_matrix(re.graph), 2);
    defectives = sqgt::DefectiveSet({5, 41}, 60);
  }
};

void BM_SimulateOutcomes(benchmark::State& state) {
  static const AdaptiveFixture fx;
  for (auto _ : state) {
    auto out = sqgt::simulate_outcomes(fx.scheme.s1, fx.defectives, fx.scheme.tau);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_SimulateOutcomes);

void BM_TwoRoundDecode(benchmark::State& state) {
  static const AdaptiveFixture fx;
  for (auto _ : state) {
    auto result = sqgt::two_round_decode(fx.scheme, fx.defectives, 2);
    benchmark::DoNotOptimize(result.decoded.size());
  }
}
BENCHMARK(BM_TwoRoundDecode);

void BM_RecoverList(benchmark::State& state) {
  static const AdaptiveFixture fx;
  const auto s1 = sqgt::simulate_outcomes(fx.scheme.s1, fx.defectives, fx.scheme.tau);
  const auto s2 = sqgt::simulate_outcomes(fx.scheme.s2, fx.defectives, fx.scheme.tau);
  const auto t_bar = sqgt::correct_with_s2(sqgt::f_tau_to_b(s1, 2), s2, 2);
  for (auto _ : state) {
    auto list = sqgt::recover_list(t_bar, fx.scheme.base);
    benchmark::DoNotOptimize(list.size());
  }
}
BENCHMARK(BM_RecoverList);

void BM_ExclusionDecode(benchmark::State& state) {
  static const sqgt::RsCode code(29, 2, 841);
  static const sqgt::BucketScheme scheme = sqgt::build_bucket_scheme(code, 2);
  const sqgt::DefectiveSet I({17, 503}, 841);
  const auto s1 = sqgt::simulate_outcomes(scheme.s1, I, scheme.tau);
  const auto s2 = sqgt::simulate_outcomes(scheme.s2, I, scheme.tau);
  for (auto _ : state) {
    auto decoded = sqgt::exclusion_decode(scheme, s1, s2);
    benchmark::DoNotOptimize(decoded.size());
  }
}
BENCHMARK(BM_ExclusionDecode);

void BM_EnumerateConsistent(benchmark::State& state) {
  static const AdaptiveFixture fx;
  const auto s1 = sqgt::simulate_outcomes(fx.scheme.s1, fx.defectives, fx.scheme.tau);
  for (auto _ : state) {
    auto sets = sqgt::enumerate_consistent(fx.scheme.s1, fx.scheme.tau, s1, 2);
    benchmark::DoNotOptimize(sets.size());
  }
}
BENCHMARK(BM_EnumerateConsistent);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "cumulant/momentcalc.hpp"
#include "cumulant/partitions.hpp"

using namespace cumulant;

static void BM_ForEachPartition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::size_t count = 0;
    for_each_partition(n, [&](const SetPartition& pi) { count += pi.block_count(); });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_ForEachPartition)->DenseRange(6, 10, 2);

static void BM_EnumerateShuffles(benchmark::State& state) {
  const std::vector<int> decks{3, 3, 2};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_shuffles(decks));
}
BENCHMARK(BM_EnumerateShuffles);

static void BM_MomentsToCumulants(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Rational> m;
  for (int k = 1; k <= n; ++k) m.emplace_back(1, k + 1);
  const MomentSequence seq(m);
  for (auto _ : state) benchmark::DoNotOptimize(moments_to_cumulants(seq));
}
BENCHMARK(BM_MomentsToCumulants)->DenseRange(4, 8, 2);

static void BM_MomentsToCumulantsByType(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Rational> m;
  for (int k = 1; k <= n; ++k) m.emplace_back(1, k + 1);
  const MomentSequence seq(m);
  for (auto _ : state) benchmark::DoNotOptimize(moments_to_cumulants_by_type(seq));
}
BENCHMARK(BM_MomentsToCumulantsByType)->DenseRange(4, 8, 2);

BENCHMARK_MAIN();

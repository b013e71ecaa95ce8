#include <benchmark/benchmark.h>

#include "cumulant/hoeffding.hpp"

using namespace cumulant;

static void BM_HoeffdingComonotonePair(benchmark::State& state) {
  const auto j = JointDistributionModel::comonotone(DistributionModel::exponential1(), 2);
  JointGridOptions opts;
  opts.points_per_axis = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hoeffding_covariance(j, opts));
}
BENCHMARK(BM_HoeffdingComonotonePair)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

static void BM_BlockFangTriple(benchmark::State& state) {
  const auto j = JointDistributionModel::comonotone(DistributionModel::exponential1(), 3);
  JointGridOptions opts;
  opts.points_per_axis = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(block_fang_cumulant(j, 3, opts));
}
BENCHMARK(BM_BlockFangTriple)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

static void BM_MultiIndexLevel(benchmark::State& state) {
  const MultiIndexCumulative mic(JointDistributionModel::independent(
      {DistributionModel::uniform01(), DistributionModel::stdnormal(), DistributionModel::exponential1()}));
  const std::vector<int> k{2, 1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(mic.at_corner(k));
}
BENCHMARK(BM_MultiIndexLevel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

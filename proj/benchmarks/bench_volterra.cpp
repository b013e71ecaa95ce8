#include <benchmark/benchmark.h>

#include "cumulant/volterra.hpp"

using namespace cumulant;

namespace {

const SampledCdf& normal_grid(std::size_t points) {
  static const SampledCdf coarse = SampledCdf::build(DistributionModel::stdnormal(), {kDefaultEpsTail, 5001});
  static const SampledCdf fine = SampledCdf::build(DistributionModel::stdnormal(), {kDefaultEpsTail, 20001});
  return points == 5001 ? coarse : fine;
}

}  // namespace

static void BM_BuildGrid(benchmark::State& state) {
  const auto d = DistributionModel::stdnormal();
  for (auto _ : state) benchmark::DoNotOptimize(SampledCdf::build(d));
}
BENCHMARK(BM_BuildGrid)->Unit(benchmark::kMillisecond);

static void BM_Theorem1(benchmark::State& state) {
  const auto& grid = normal_grid(static_cast<std::size_t>(state.range(1)));
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cumulants_via_theorem1(grid, order));
}
BENCHMARK(BM_Theorem1)->ArgsProduct({{4, 6}, {5001, 20001}})->Unit(benchmark::kMillisecond);

static void BM_Factorized(benchmark::State& state) {
  const auto& grid = normal_grid(20001);
  for (auto _ : state) benchmark::DoNotOptimize(cumulants_via_factorized(grid, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Factorized)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_Truncated(benchmark::State& state) {
  const auto& grid = normal_grid(20001);
  for (auto _ : state) benchmark::DoNotOptimize(cumulants_via_truncated(grid, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Truncated)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Mrl(benchmark::State& state) {
  const auto& grid = normal_grid(5001);
  for (auto _ : state) benchmark::DoNotOptimize(cumulants_via_mrl(grid, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Mrl)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

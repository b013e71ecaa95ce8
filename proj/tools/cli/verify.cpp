#include <cmath>
#include <fmt/format.h>

#include "cli/internal.hpp"
#include "cumulant/error.hpp"
#include "cumulant/hoeffding.hpp"
#include "cumulant/partitions.hpp"
#include "cumulant/volterra.hpp"

namespace cumulant::cli {

namespace {

constexpr const char* kBuiltins[] = {"uniform01", "exponential1", "stdnormal", "twopoint(0.5,0,1)"};

void add(VerifyReport& r, std::string name, double residual, double tolerance) {
  const bool pass = residual <= tolerance;
  r.pass = r.pass && pass;
  r.checks.push_back({std::move(name), residual, tolerance, pass});
}

std::vector<std::uint64_t> bell_triangle(int n_max) {
  std::vector<std::uint64_t> bell{1};
  std::vector<std::uint64_t> row{1};
  for (int n = 1; n <= n_max; ++n) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t x : row) next.push_back(next.back() + x);
    bell.push_back(next.front());
    row = std::move(next);
  }
  return bell;
}

void combinatorics(VerifyReport& r) {
  const auto bell = bell_triangle(8);
  for (int n = 1; n <= 8; ++n) {
    const auto count = enumerate_partitions(n).size();
    add(r, fmt::format("bell[{}]", n), std::abs(double(count) - double(bell[n])), 0.0);
    std::uint64_t fdb_total = 0;
    double worst = 0.0;
    for (const auto& lambda : enumerate_types(n)) {
      const auto fdb = faa_di_bruno_count(lambda);
      fdb_total += fdb;
      const auto parts = lambda.parts();
      const auto shuffles = enumerate_shuffles(parts).size();
      std::uint64_t k_factorials = 1;
      for (int k : lambda.multiplicities()) k_factorials *= factorial(k);
      worst = std::max(worst, std::abs(double(shuffles) - double(multinomial(parts))));
      worst = std::max(worst, std::abs(double(shuffles) - double(k_factorials * fdb)));
    }
    add(r, fmt::format("faa_di_bruno_sum[{}]", n), std::abs(double(fdb_total) - double(bell[n])), 0.0);
    add(r, fmt::format("shuffle_count[{}]", n), worst, 0.0);
  }
}

void shuffle(VerifyReport& r, const GridOptions& opts) {
  for (const char* name : kBuiltins) {
    const auto grid = SampledCdf::build(builtin(name), opts);
    double worst = 0.0;
    for (int m = 0; m <= 5; ++m) {
      for (int n = 0; m + n <= 5; ++n) {
        if (m + n > 0) worst = std::max(worst, verify_shuffle_relation(grid, m, n));
      }
    }
    add(r, fmt::format("shuffle_residual[{}]", name), worst, 1e-6);
  }
}

void hoeffding(VerifyReport& r, const GridOptions& opts) {
  const auto u = DistributionModel::uniform01();
  const auto e = DistributionModel::exponential1();
  add(r, "independent_pair_kappa2",
      std::abs(block_fang_cumulant(JointDistributionModel::independent({e, DistributionModel::stdnormal()}), 2)),
      1e-10);
  add(r, "comonotone_uniform_covariance",
      std::abs(hoeffding_covariance(JointDistributionModel::comonotone(u, 2)) - 1.0 / 12.0), 1e-5);
  add(r, "comonotone_exponential_kappa3",
      std::abs(block_fang_cumulant(JointDistributionModel::comonotone(e, 3), 3) - 2.0), 2e-2);
  for (int n : {2, 3}) {
    for (const auto& d : {u, e}) {
      add(r, fmt::format("comonotone_reduction[{},{}]", d.name(), n),
          comonotone_reduction_check(d, n, {}, opts), 1e-3);
    }
  }
}

void mrl(VerifyReport& r, const GridOptions& opts) {
  for (const char* name : kBuiltins) {
    const auto grid = SampledCdf::build(builtin(name), opts);
    const auto k = cumulants_via_theorem1(grid, 4);
    for (int n : {3, 4}) {
      const double v = cumulants_via_mrl(grid, n);
      const double diff = std::abs(v - k[n]);
      const double scale = std::max({std::abs(v), std::abs(k[n]), 1e-3});
      add(r, fmt::format("mrl_vs_theorem1[{},{}]", name, n), diff / scale, 1e-2);
    }
  }
}

}  // namespace

VerifyReport run_verify(const std::string& suite, const RunConfig& config) {
  if (config.grid_points < 1001 || config.grid_points % 2 == 0) {
    throw ModelError("--grid-points must be odd and at least 1001");
  }
  VerifyReport r;
  r.suite = suite;
  r.config = config;
  const GridOptions opts{config.eps_tail, config.grid_points};
  if (suite == "combinatorics") {
    combinatorics(r);
  } else if (suite == "shuffle") {
    shuffle(r, opts);
  } else if (suite == "hoeffding") {
    hoeffding(r, opts);
  } else if (suite == "mrl") {
    mrl(r, opts);
  } else {
    throw ModelError("unknown suite '" + suite + "'");
  }
  return r;
}

}  // namespace cumulant::cli

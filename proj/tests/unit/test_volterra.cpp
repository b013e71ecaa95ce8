#include <gtest/gtest.h>

#include <cmath>

#include "cumulant/error.hpp"
#include "cumulant/volterra.hpp"
#include "support/series_oracle.hpp"

using namespace cumulant;

namespace {

std::vector<DistributionModel> builtins() {
  return {DistributionModel::uniform01(), DistributionModel::exponential1(), DistributionModel::stdnormal(),
          DistributionModel::twopoint(0.5, 0.0, 1.0)};
}

std::vector<double> exact_cumulants(const DistributionModel& d, int order) {
  const auto m = *d.reference_moments(order);
  std::vector<oracle::Q> mv(m.values().begin(), m.values().end());
  std::vector<double> out;
  for (const auto& k : oracle::cumulants_from_moments(mv)) out.push_back(to_double(k));
  return out;
}

void expect_close(double got, double want, double rel, double abs, const std::string& what) {
  EXPECT_TRUE(std::abs(got - want) <= abs || std::abs(got - want) <= rel * std::abs(want))
      << what << ": got " << got << " want " << want;
}

const GridOptions kCoarse{1e-10, 4001};

}  // namespace

TEST(VolterraApply, Examples) {
  const auto zero = volterra_apply(GridFunction(0, 0.1, std::vector<double>(11, 0.0)));
  for (double v : zero.values()) EXPECT_EQ(v, 0.0);
  const auto one = volterra_apply(GridFunction(0, 0.1, std::vector<double>(11, 1.0)));
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_NEAR(one[i], one.node(i), 1e-15);
  std::vector<double> t;
  for (int i = 0; i <= 100; ++i) t.push_back(i / 100.0);
  const auto ramp = volterra_apply(GridFunction(0, 0.01, t));
  EXPECT_EQ(ramp[0], 0.0);
  EXPECT_NEAR(ramp[100], 0.5, 1e-12);
}

TEST(CumulativeGrid, LevelsShareGridAndAreMonotone) {
  const auto s = SampledCdf::build(DistributionModel::stdnormal(), kCoarse);
  const CumulativeGrid cg(s.cdf(), 5);
  EXPECT_EQ(cg.max_level(), 5);
  EXPECT_EQ(cg.level(0).values()[10], s.cdf()[10]);
  for (int k = 1; k <= 5; ++k) {
    EXPECT_EQ(cg.level(k).lo(), s.lo());
    EXPECT_EQ(cg.level(k).step(), s.cdf().step());
    EXPECT_EQ(cg.level(k).size(), s.cdf().size());
    EXPECT_EQ(cg.level(k)[0], 0.0);
    for (std::size_t i = 1; i < cg.level(k).size(); ++i) EXPECT_GE(cg.level(k)[i], cg.level(k)[i - 1]);
  }
  // Levels 1 and 2 coincide with repeated trapezoid integration.
  const auto v1 = volterra_apply(s.cdf());
  const auto v2 = volterra_apply(v1);
  for (std::size_t i = 0; i < v1.size(); i += 97) {
    EXPECT_NEAR(cg.level(1)[i], v1[i], 1e-12);
    EXPECT_NEAR(cg.level(2)[i], v2[i], 1e-11);
  }
  const auto v3 = volterra_apply(v2);
  EXPECT_NEAR(cg.level(3).values().back(), v3.values().back(), 1e-4 * v3.values().back());
  EXPECT_THROW(CumulativeGrid(s.cdf(), kMaxIteratedOrder + 1), SizeLimitError);
}

TEST(IteratedCdf, Examples) {
  const auto u = DistributionModel::uniform01();
  EXPECT_NEAR(iterated_cdf(u, 0, 0.3), 0.3, 1e-12);
  EXPECT_NEAR(iterated_cdf(u, 1, 1.0), 0.5, 1e-9);
  const auto e = DistributionModel::exponential1();
  const double b = truncate_support(e, kDefaultEpsTail).hi;
  EXPECT_NEAR(iterated_cdf(e, 1, b), b - 1.0, 1e-6);
  EXPECT_THROW(iterated_cdf(u, 1, 2.0), RangeError);
  EXPECT_THROW(iterated_cdf(u, kMaxIteratedOrder + 1, 1.0), SizeLimitError);
}

TEST(IteratedCdf, UniformClosedForm) {
  // F^[n](t) = t^{n+1} / (n+1)! on [0,1].
  const auto s = SampledCdf::build(DistributionModel::uniform01());
  for (int n = 0; n <= 6; ++n) {
    for (double t : {0.25, 0.5, 1.0}) {
      EXPECT_NEAR(iterated_cdf(s, n, t), std::pow(t, n + 1) / std::tgamma(n + 2), 1e-9) << n;
    }
  }
}

TEST(TruncatedMoments, Examples) {
  const auto point = DistributionModel::empirical_from_samples({0.7});
  const auto sp = SampledCdf::build(point);
  EXPECT_NEAR(truncated_y_moments(sp, sp.hi(), 1)[0], 0.7 - sp.hi(), 1e-9);
  EXPECT_NEAR(truncated_y_moments(DistributionModel::uniform01(), 1.0, 1)[0], -0.5, 1e-9);
  const auto e = DistributionModel::exponential1();
  const double b = truncate_support(e, kDefaultEpsTail).hi;
  const auto y = truncated_y_moments(e, b, 2);
  EXPECT_NEAR(y[1], 2 - 2 * b + b * b, 1e-4);
}

TEST(TruncatedMoments, BinomialCrossCheck) {
  for (const auto& d : builtins()) {
    const auto s = SampledCdf::build(d);
    const double tau = s.hi();
    const auto y = truncated_y_moments(s, tau, 4);
    const auto m = to_real(*d.reference_moments(4));
    for (int n = 1; n <= 4; ++n) {
      double expect = 0.0;
      for (int k = 0; k <= n; ++k) {
        expect += std::tgamma(n + 1) / (std::tgamma(k + 1) * std::tgamma(n - k + 1)) * std::pow(-tau, n - k) * m[k];
      }
      expect_close(y[n - 1], expect, 1e-4, 1e-6, d.name() + " y" + std::to_string(n));
    }
  }
}

TEST(TruncatedRoute, Examples) {
  const auto e = cumulants_via_truncated(DistributionModel::exponential1(), 4);
  const double ek[] = {1, 1, 2, 6};
  for (int n = 1; n <= 4; ++n) expect_close(e[n], ek[n - 1], 1e-3, 0, "exp");
  const auto u = cumulants_via_truncated(DistributionModel::uniform01(), 4);
  const double uk[] = {0.5, 1.0 / 12, 0, -1.0 / 120};
  for (int n = 1; n <= 4; ++n) EXPECT_NEAR(u[n], uk[n - 1], 1e-5);
  const auto two = cumulants_via_truncated(DistributionModel::empirical_from_samples({0, 1}), 2);
  EXPECT_NEAR(two[2], 0.25, 1e-8);
}

TEST(TruncatedRoute, AnyUpperBoundServesAsTau) {
  // tau = 6 leaves tail mass ~1e-9 above it; the reported cumulants move
  // only by that tail's contribution.
  const auto s = SampledCdf::build(DistributionModel::stdnormal());
  const auto a = cumulants_via_truncated(s, 5);
  const auto b = cumulants_via_truncated(s, 5, 6.0);
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(a[n], b[n], 1e-4) << n;
  EXPECT_THROW(cumulants_via_truncated(s, 5, s.hi() + 1.0), RangeError);
}

TEST(SimplexIntegral, Examples) {
  const auto s = SampledCdf::build(DistributionModel::uniform01());
  EXPECT_NEAR(simplex_partition_integral(s, SetPartition::coarsest(1)), iterated_cdf(s, 1, s.hi()), 1e-15);
  EXPECT_NEAR(simplex_partition_integral(s, SetPartition::coarsest(2)), 1.0 / 6, 1e-9);
  EXPECT_NEAR(simplex_partition_integral(s, SetPartition::finest(2)), 1.0 / 8, 1e-9);
}

TEST(SimplexIntegral, NonnegativeSoTermSignsFollowMobius) {
  for (const auto& d : builtins()) {
    const auto s = SampledCdf::build(d, kCoarse);
    for (int n = 1; n <= 6; ++n) {
      for (const auto& pi : enumerate_partitions(n)) EXPECT_GE(simplex_partition_integral(s, pi), 0.0);
    }
  }
}

TEST(SimplexRoute, VarianceDoubleIntegral) {
  // kappa_2 = 2 * iint_{t1<t2} F(t1)(1 - F(t2)).
  for (const auto& d : builtins()) {
    const auto s = SampledCdf::build(d);
    const std::vector<Letter> word{Letter::cdf, Letter::survival};
    EXPECT_NEAR(cumulants_via_theorem1(s, 2)[2], 2 * s.iterated_integral(word), 1e-9) << d.name();
  }
  EXPECT_NEAR(cumulants_via_theorem1(DistributionModel::stdnormal(), 2)[2], 1.0, 1e-4);
  EXPECT_NEAR(cumulants_via_theorem1(DistributionModel::uniform01(), 2)[2], 1.0 / 12, 1e-6);
}

TEST(SimplexRoute, HigherOrders) {
  const auto u = cumulants_via_theorem1(DistributionModel::uniform01(), 4);
  EXPECT_NEAR(u[3], 0.0, 1e-8);
  EXPECT_NEAR(u[4], -1.0 / 120, 1e-5);
  const auto e = cumulants_via_theorem1(DistributionModel::exponential1(), 6);
  for (int n = 1; n <= 6; ++n) expect_close(e[n], std::tgamma(n), 1e-3, 0, "exp" + std::to_string(n));
  EXPECT_THROW(cumulants_via_theorem1(DistributionModel::uniform01(), 7), SizeLimitError);
}

TEST(SimplexRoute, MatchesSeriesOracleOnAllBuiltins) {
  for (const auto& d : builtins()) {
    const auto k = cumulants_via_theorem1(d, 6);
    const auto ref = exact_cumulants(d, 6);
    for (int n = 1; n <= 6; ++n) expect_close(k[n], ref[n - 1], 1e-3, 1e-5, d.name() + std::to_string(n));
  }
}

TEST(Factorized, AgreesWithTheorem1) {
  for (const auto& d : builtins()) {
    const auto s = SampledCdf::build(d);
    const auto a = cumulants_via_theorem1(s, 6);
    const auto b = cumulants_via_factorized(s, 6);
    EXPECT_NEAR(a[2], b[2], 1e-9);
    for (int n = 1; n <= 6; ++n) expect_close(a[n], b[n], 1e-6, 1e-6, d.name() + std::to_string(n));
  }
  EXPECT_NEAR(cumulants_via_factorized(DistributionModel::uniform01(), 3)[3], 0.0, 1e-8);
  expect_close(cumulants_via_factorized(DistributionModel::exponential1(), 3)[3], 2.0, 1e-3, 0, "exp3");
}

TEST(Mrl, Examples) {
  EXPECT_NEAR(cumulants_via_mrl(DistributionModel::uniform01(), 3), 0.0, 1e-5);
  expect_close(cumulants_via_mrl(DistributionModel::exponential1(), 3), 2.0, 1e-2, 0, "exp3");
  expect_close(cumulants_via_mrl(DistributionModel::uniform01(), 4), -1.0 / 120, 1e-2, 0, "unif4");
  EXPECT_THROW(cumulants_via_mrl(DistributionModel::uniform01(), 5), SizeLimitError);
}

TEST(Mrl, AgreesWithTheorem1) {
  for (const auto& d : builtins()) {
    const auto s = SampledCdf::build(d);
    const auto k = cumulants_via_theorem1(s, 4);
    for (int n : {3, 4}) expect_close(cumulants_via_mrl(s, n), k[n], 1e-3, 1e-5, d.name() + std::to_string(n));
  }
}

TEST(Shuffle, Examples) {
  const auto u = SampledCdf::build(DistributionModel::uniform01());
  EXPECT_EQ(verify_shuffle_relation(u, 1, 0), 0.0);
  EXPECT_LE(verify_shuffle_relation(u, 1, 1), 1e-8);
  EXPECT_LE(verify_shuffle_relation(DistributionModel::stdnormal(), 2, 1), 1e-6);
  EXPECT_THROW(verify_shuffle_relation(u, 4, 3), SizeLimitError);
}

TEST(Shuffle, AllBuiltinsUpToTotalOrderSix) {
  for (const auto& d : builtins()) {
    const auto s = SampledCdf::build(d, kCoarse);
    for (int m = 0; m <= 6; ++m) {
      for (int n = 0; m + n <= 6; ++n) {
        if (m + n == 0) continue;
        const double scale = std::max(1.0, std::pow(s.hi() - s.lo(), m + n));
        EXPECT_LE(verify_shuffle_relation(s, m, n), 1e-12 * scale) << d.name() << " " << m << "," << n;
      }
    }
  }
}

TEST(Routes, PairwiseAgreementOnAllBuiltins) {
  for (const auto& d : builtins()) {
    const auto s = SampledCdf::build(d);
    const auto a = cumulants_via_truncated(s, 5);
    const auto b = cumulants_via_theorem1(s, 5);
    const auto c = cumulants_via_factorized(s, 5);
    for (int n = 1; n <= 5; ++n) {
      expect_close(a[n], b[n], 1e-3, 1e-5, d.name() + " trunc/thm1");
      expect_close(b[n], c[n], 1e-3, 1e-5, d.name() + " thm1/fact");
      expect_close(a[n], c[n], 1e-3, 1e-5, d.name() + " trunc/fact");
    }
  }
}

TEST(Routes, GridConvergence) {
  // Halving the step moves every value by less than four times the route
  // tolerance and the change itself shrinks roughly fourfold.
  for (const auto& d : builtins()) {
    const auto coarse = cumulants_via_theorem1(d, 5, {1e-10, 5001});
    const auto fine = cumulants_via_theorem1(d, 5, {1e-10, 10001});
    const auto finer = cumulants_via_theorem1(d, 5, {1e-10, 20001});
    for (int n = 1; n <= 5; ++n) {
      const double tol = std::max(1e-5, 1e-3 * std::abs(finer[n]));
      EXPECT_LE(std::abs(fine[n] - finer[n]), 4 * tol) << d.name() << n;
      const double d1 = std::abs(coarse[n] - fine[n]);
      const double d2 = std::abs(fine[n] - finer[n]);
      if (d1 > 1e-6 * std::max(1.0, std::abs(finer[n]))) EXPECT_LT(d2, 0.5 * d1) << d.name() << n;
    }
  }
}

TEST(Routes, EmpiricalDiscreteMeasureIsExact) {
  const auto xs = read_samples_file(CUMULANT_TEST_DATA_DIR "/samples_1000.txt");
  const auto d = DistributionModel::empirical_from_samples(xs);
  const auto exact = moments_to_cumulants(*d.empirical_moments(4));
  const auto t1 = cumulants_via_theorem1(d, 4);
  const auto tr = cumulants_via_truncated(d, 4);
  for (int n = 1; n <= 4; ++n) {
    EXPECT_NEAR(t1[n], exact[n], 1e-6) << n;
    EXPECT_NEAR(tr[n], exact[n], 1e-6) << n;
  }
}

TEST(Routes, PointMass) {
  const auto d = DistributionModel::empirical_from_samples({-4.0});
  const auto k = cumulants_via_theorem1(d, 4);
  EXPECT_NEAR(k[1], -4.0, 1e-12);
  for (int n = 2; n <= 4; ++n) EXPECT_NEAR(k[n], 0.0, 1e-12);
}

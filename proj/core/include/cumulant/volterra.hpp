#pragma once

// Iterated integrals of a CDF on a shared uniform grid and the cumulant
// routes built on them.
//
// All ordered-simplex integrals are evaluated as the exact iterated
// integrals of the piecewise-linear path t -> (t, A(t)), where A is the
// trapezoid running integral of F. Per grid cell the path increment is a
// straight segment, so a word of length n is propagated with the segment's
// truncated exponential (Chen's concatenation) in O(n^2) per cell. This keeps
// every identity between iterated integrals (shuffle products, the
// partition-lattice recursion, the cumulant formulas) exact up to rounding.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cumulant/dists.hpp"
#include "cumulant/momentcalc.hpp"
#include "cumulant/partitions.hpp"

namespace cumulant {

/// Discretization shared by the univariate routes.
struct GridOptions {
  double eps_tail = kDefaultEpsTail;
  std::size_t grid_points = 20001;
};

inline constexpr int kMaxIteratedOrder = 8;
inline constexpr int kMaxSimplexRouteOrder = 6;

/// Running trapezoid integral from lo; result[0] = 0.
GridFunction volterra_apply(const GridFunction& g);

/// Integrator attached to one coordinate of an ordered-simplex integral.
enum class Letter : std::uint8_t {
  cdf,       ///< F(t) dt
  lebesgue,  ///< dt
  survival,  ///< (1 - F(t)) dt
};

/// Letters assigning F to block minima and dt elsewhere.
std::vector<Letter> word_from_mask(std::span<const std::uint8_t> mask);

/// F sampled on the truncated support of a model.
class SampledCdf {
 public:
  static SampledCdf build(const DistributionModel& d, const GridOptions& options = {});
  explicit SampledCdf(GridFunction cdf);

  const GridFunction& cdf() const noexcept { return cdf_; }
  double lo() const noexcept { return cdf_.lo(); }
  double hi() const noexcept { return cdf_.hi(); }

  /// Integral over lo < t_1 < ... < t_n < hi of the word's integrators.
  double iterated_integral(std::span<const Letter> word) const;

 private:
  GridFunction cdf_;
  std::vector<double> cdf_increments_;  // A(t_{j+1}) - A(t_j)
};

/// F^[0] = F and F^[k] = V F^[k-1] on a common grid.
///
/// Level 1 is volterra_apply(base). Deeper levels integrate the
/// piecewise-linear interpolant of the base exactly, so level k agrees with
/// k-fold trapezoid up to O(step^2) while satisfying the same identities as
/// SampledCdf::iterated_integral.
class CumulativeGrid {
 public:
  CumulativeGrid(const GridFunction& base, int max_level);

  int max_level() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  const GridFunction& base() const noexcept { return levels_.front(); }
  const GridFunction& level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
  /// Level k at t by linear interpolation.
  double evaluate(int k, double t) const { return level(k).interpolate(t); }

 private:
  std::vector<GridFunction> levels_;
};

/// F^[n](tau) = E (tau - X)_+^n / n!.
double iterated_cdf(const SampledCdf& grid, int n, double tau);
double iterated_cdf(const DistributionModel& d, int n, double tau, const GridOptions& options = {});

/// y_k = (-1)^k k! F^[k](tau) = E (X - tau)^k for k = 1..order.
std::vector<double> truncated_y_moments(const SampledCdf& grid, double tau, int order);
std::vector<double> truncated_y_moments(const DistributionModel& d, double tau, int order,
                                        const GridOptions& options = {});

/// Cumulants from the moments of X - tau; tau defaults to the upper
/// truncation bound. kappa_1 carries the +tau correction.
RealCumulantSequence cumulants_via_truncated(const SampledCdf& grid, int order,
                                             std::optional<double> tau = std::nullopt);
RealCumulantSequence cumulants_via_truncated(const DistributionModel& d, int order,
                                             std::optional<double> tau = std::nullopt,
                                             const GridOptions& options = {});

/// Ordered-simplex integral of F_pi = prod_{B in pi} F(t_{min B}).
double simplex_partition_integral(const SampledCdf& grid, const SetPartition& pi);
double simplex_partition_integral(const DistributionModel& d, const SetPartition& pi,
                                  const GridOptions& options = {});

/// kappa_n = (-1)^n n! sum_pi mu(pi, 1_n) int_{t_1<...<t_n} F_pi, n >= 2;
/// kappa_1 = hi - int F (the mean written through the distribution function).
RealCumulantSequence cumulants_via_theorem1(const SampledCdf& grid, int order);
RealCumulantSequence cumulants_via_theorem1(const DistributionModel& d, int order,
                                            const GridOptions& options = {});

/// Same cumulants through the recursive factorization over Pi_{n-1}:
/// kappa_n = (-1)^n n! sum_{pi in Pi_{n-1}} |pi| mu(pi) int F_pi (1 - F(t_n)).
RealCumulantSequence cumulants_via_factorized(const SampledCdf& grid, int order);
RealCumulantSequence cumulants_via_factorized(const DistributionModel& d, int order,
                                              const GridOptions& options = {});

/// kappa_n for n in {3, 4} from the (n-2)-variable integral in which the
/// outer coordinates are absorbed into P(t) F(t) and (1 - F(t)) R(t).
/// Where a guard on F or 1 - F fails the corresponding factor is taken as 0;
/// the integrand carries F (1 - F) there and is negligible.
double cumulants_via_mrl(const SampledCdf& grid, int n);
double cumulants_via_mrl(const DistributionModel& d, int n, const GridOptions& options = {});

/// |V^m F(b) V^n F(b) - sum_{s in Sh(m,n)} int F_s| with V^0 F := 1.
double verify_shuffle_relation(const SampledCdf& grid, int m, int n);
double verify_shuffle_relation(const DistributionModel& d, int m, int n,
                               const GridOptions& options = {});

}  // namespace cumulant

#pragma once

// Univariate distribution models exposed through their CDF only.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cumulant/momentcalc.hpp"

namespace cumulant {

enum class DistributionKind { analytic, grid, empirical };

/// Samples of a function on the uniform grid lo + i*step, i = 0..size()-1.
class GridFunction {
 public:
  /// Requires at least three samples and a positive step.
  GridFunction(double lo, double step, std::vector<double> values);

  double lo() const noexcept { return lo_; }
  double step() const noexcept { return step_; }
  double hi() const noexcept { return node(values_.size() - 1); }
  std::size_t size() const noexcept { return values_.size(); }
  double node(std::size_t i) const noexcept { return lo_ + static_cast<double>(i) * step_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  /// Piecewise-linear interpolation; throws RangeError outside [lo, hi].
  double interpolate(double t) const;

 private:
  double lo_;
  double step_;
  std::vector<double> values_;
};

struct SupportBounds {
  double lo;
  double hi;
};

/// A CDF together with its support bracket and, for builtins, exact moments.
/// Immutable after construction.
class DistributionModel {
 public:
  static DistributionModel uniform01();
  static DistributionModel exponential1();
  static DistributionModel stdnormal();
  /// Mass 1-p at x0 and p at x1.
  static DistributionModel twopoint(double p, double x0, double x1);
  /// Piecewise-linear CDF through (t_i, F_i); t strictly increasing.
  static DistributionModel from_grid(std::vector<double> t, std::vector<double> F);
  /// Right-continuous empirical CDF of the samples.
  static DistributionModel empirical_from_samples(std::vector<double> xs);

  DistributionKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  double cdf(double t) const;
  /// 1 - F(t), evaluated without cancellation for analytic tails.
  double survival(double t) const;

  /// True when F is piecewise constant (twopoint, empirical).
  bool has_step_cdf() const noexcept { return !jumps_.empty(); }
  /// Inner bracket of the support. Sides flagged exact bound the support.
  SupportBounds support_hint() const noexcept { return hint_; }
  bool lower_bound_exact() const noexcept { return lower_exact_; }
  bool upper_bound_exact() const noexcept { return upper_exact_; }

  /// Exact moments m_1..m_order for builtins, nullopt otherwise.
  std::optional<MomentSequence> reference_moments(int order) const;
  /// Raw moments of the empirical measure; nullopt for other kinds.
  std::optional<RealMomentSequence> empirical_moments(int order) const;
  /// Sorted samples of an empirical model (empty otherwise).
  std::span<const double> samples() const noexcept { return samples_; }

  /// Integral of F over [lo, hi]; exact for step and grid CDFs.
  double integrate_cdf(double lo, double hi) const;
  /// Integral of 1 - F over [lo, hi].
  double integrate_survival(double lo, double hi) const;

  /// Independent draws by inversion (empirical: resampling).
  std::vector<double> draw(std::size_t count, std::uint64_t seed) const;

 private:
  enum class Family { uniform01, exponential1, stdnormal, twopoint, grid, empirical };

  DistributionModel() = default;
  double integrate_step(double lo, double hi) const;
  double integrate_knots(double lo, double hi) const;

  DistributionKind kind_ = DistributionKind::analytic;
  Family family_ = Family::uniform01;
  std::string name_;
  SupportBounds hint_{0.0, 1.0};
  bool lower_exact_ = false;
  bool upper_exact_ = false;

  // twopoint parameters
  double p_ = 0.0, x0_ = 0.0, x1_ = 0.0;
  // step CDFs: F = cumulative_[i] on [jumps_[i], jumps_[i+1])
  std::vector<double> jumps_;
  std::vector<double> cumulative_;
  // grid CDFs
  std::vector<double> knots_t_;
  std::vector<double> knots_F_;
  // empirical
  std::vector<double> samples_;
};

/// Builtin by name: uniform01, exponential1, stdnormal, twopoint(p,x0,x1).
DistributionModel builtin(std::string_view spec);

/// Default tail mass for analytic truncation.
inline constexpr double kDefaultEpsTail = 1e-10;
/// Denominator guard for the mean residual life functions.
inline constexpr double kMrlGuard = 1e-12;

/// Finds (a, b) with F(a) <= eps_tail and F(b) >= 1 - eps_tail. Sides whose
/// support bound is known are returned as is; the others are located by
/// bisection from the support hint.
SupportBounds truncate_support(const DistributionModel& d, double eps_tail);

/// R(y) = int_y^b (1 - F) / (1 - F(y)), b the upper truncation bound.
double mean_residual_life_R(const DistributionModel& d, double y,
                            double eps_tail = kDefaultEpsTail);
/// P(y) = int_a^y F / F(y), a the lower truncation bound.
double mean_residual_life_P(const DistributionModel& d, double y,
                            double eps_tail = kDefaultEpsTail);

/// Samples F on `points` uniform nodes over [bounds.lo, bounds.hi].
///
/// Step CDFs are sampled as averages over the dual cell
/// [t_j - step/2, t_j + step/2] instead of point values, which keeps the
/// trapezoid integral of F exact across jumps.
GridFunction sample_cdf(const DistributionModel& d, SupportBounds bounds, std::size_t points);

/// One finite decimal number per line; blank lines are ignored.
std::vector<double> read_samples_file(const std::filesystem::path& path);
/// CSV with header `t,F` and strictly increasing t.
DistributionModel read_grid_cdf_file(const std::filesystem::path& path);

}  // namespace cumulant

#include "cumulant/dists.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

namespace cumulant {

namespace {

std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Composite Simpson over [lo, hi] with a fixed even panel count.
template <class F>
double simpson(F&& f, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  constexpr int panels = 4096;
  const double h = (hi - lo) / panels;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) sum += f(lo + i * h) * ((i % 2) ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Slack around the atoms of a step CDF: one step of the coarsest grid the
// tools accept (1001 points).
double step_slack(double lo, double hi) {
  const double range = hi - lo;
  return (range > 0.0 ? range : 1.0) / 1000.0;
}

}  // namespace

GridFunction::GridFunction(double lo, double step, std::vector<double> values)
    : lo_(lo), step_(step), values_(std::move(values)) {
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(step)) {
    throw ModelError("grid step must be positive and finite");
  }
  if (values_.size() < 3) throw ModelError("grid needs at least 3 samples");
}

double GridFunction::interpolate(double t) const {
  const double x = (t - lo_) / step_;
  const double last = static_cast<double>(values_.size() - 1);
  // Tolerate rounding at the end points.
  if (!(x >= -1e-9) || !(x <= last + 1e-9)) {
    throw RangeError("point " + shortest(t) + " outside grid [" + shortest(lo_) + ", " +
                     shortest(hi()) + "]");
  }
  const double clamped = std::clamp(x, 0.0, last);
  auto i = static_cast<std::size_t>(clamped);
  if (i >= values_.size() - 1) return values_.back();
  const double frac = clamped - static_cast<double>(i);
  return values_[i] + frac * (values_[i + 1] - values_[i]);
}

DistributionModel DistributionModel::uniform01() {
  DistributionModel d;
  d.family_ = Family::uniform01;
  d.name_ = "uniform01";
  d.hint_ = {0.0, 1.0};
  d.lower_exact_ = d.upper_exact_ = true;
  return d;
}

DistributionModel DistributionModel::exponential1() {
  DistributionModel d;
  d.family_ = Family::exponential1;
  d.name_ = "exponential1";
  d.hint_ = {0.0, 1.0};
  d.lower_exact_ = true;
  return d;
}

DistributionModel DistributionModel::stdnormal() {
  DistributionModel d;
  d.family_ = Family::stdnormal;
  d.name_ = "stdnormal";
  d.hint_ = {-1.0, 1.0};
  return d;
}

DistributionModel DistributionModel::twopoint(double p, double x0, double x1) {
  if (!(p > 0.0 && p < 1.0)) throw ModelError("twopoint requires 0 < p < 1");
  if (!std::isfinite(x0) || !std::isfinite(x1) || !(x0 < x1)) {
    throw ModelError("twopoint requires finite x0 < x1");
  }
  DistributionModel d;
  d.family_ = Family::twopoint;
  d.name_ = "twopoint(" + shortest(p) + "," + shortest(x0) + "," + shortest(x1) + ")";
  d.p_ = p;
  d.x0_ = x0;
  d.x1_ = x1;
  d.jumps_ = {x0, x1};
  d.cumulative_ = {1.0 - p, 1.0};
  const double slack = step_slack(x0, x1);
  d.hint_ = {x0 - slack, x1 + slack};
  d.lower_exact_ = d.upper_exact_ = true;
  return d;
}

DistributionModel DistributionModel::from_grid(std::vector<double> t, std::vector<double> F) {
  if (t.size() != F.size() || t.size() < 2) throw ModelError("grid CDF needs >= 2 (t, F) pairs");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(F[i])) throw ModelError("grid CDF values must be finite");
    if (F[i] < 0.0 || F[i] > 1.0) throw ModelError("grid CDF values must lie in [0,1]");
    if (i > 0 && !(t[i] > t[i - 1])) throw ModelError("grid CDF t must be strictly increasing");
    if (i > 0 && F[i] < F[i - 1]) throw ModelError("grid CDF must be nondecreasing");
  }
  DistributionModel d;
  d.kind_ = DistributionKind::grid;
  d.family_ = Family::grid;
  d.name_ = "grid";
  d.hint_ = {t.front(), t.back()};
  d.lower_exact_ = d.upper_exact_ = true;
  d.knots_t_ = std::move(t);
  d.knots_F_ = std::move(F);
  return d;
}

DistributionModel DistributionModel::empirical_from_samples(std::vector<double> xs) {
  if (xs.empty()) throw ModelError("empirical model needs at least one sample");
  for (double x : xs) {
    if (!std::isfinite(x)) throw ModelError("samples must be finite");
  }
  std::sort(xs.begin(), xs.end());
  DistributionModel d;
  d.kind_ = DistributionKind::empirical;
  d.family_ = Family::empirical;
  d.name_ = "empirical";
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (d.jumps_.empty() || xs[i] != d.jumps_.back()) {
      d.jumps_.push_back(xs[i]);
      d.cumulative_.push_back(0.0);
    }
    d.cumulative_.back() = static_cast<double>(i + 1) / n;
  }
  d.cumulative_.back() = 1.0;
  const double slack = step_slack(xs.front(), xs.back());
  d.hint_ = {xs.front() - slack, xs.back() + slack};
  d.lower_exact_ = d.upper_exact_ = true;
  d.samples_ = std::move(xs);
  return d;
}

double DistributionModel::cdf(double t) const {
  if (std::isnan(t)) throw ModelError("cdf of NaN");
  switch (family_) {
    case Family::uniform01:
      return clamp01(t);
    case Family::exponential1:
      return t <= 0.0 ? 0.0 : -std::expm1(-t);
    case Family::stdnormal:
      return 0.5 * std::erfc(-t / std::numbers::sqrt2);
    case Family::grid: {
      if (t <= knots_t_.front()) return knots_F_.front();
      if (t >= knots_t_.back()) return knots_F_.back();
      const auto it = std::upper_bound(knots_t_.begin(), knots_t_.end(), t);
      const auto i = static_cast<std::size_t>(it - knots_t_.begin()) - 1;
      const double w = (t - knots_t_[i]) / (knots_t_[i + 1] - knots_t_[i]);
      return clamp01(knots_F_[i] + w * (knots_F_[i + 1] - knots_F_[i]));
    }
    case Family::twopoint:
    case Family::empirical: {
      const auto it = std::upper_bound(jumps_.begin(), jumps_.end(), t);
      if (it == jumps_.begin()) return 0.0;
      return cumulative_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
    }
  }
  return 0.0;
}

double DistributionModel::survival(double t) const {
  switch (family_) {
    case Family::exponential1:
      return t <= 0.0 ? 1.0 : std::exp(-t);
    case Family::stdnormal:
      return 0.5 * std::erfc(t / std::numbers::sqrt2);
    default:
      return 1.0 - cdf(t);
  }
}

std::optional<MomentSequence> DistributionModel::reference_moments(int order) const {
  if (order < 1) throw ModelError("moment order must be positive");
  std::vector<Rational> m;
  switch (family_) {
    case Family::uniform01:
      for (int n = 1; n <= order; ++n) m.emplace_back(Rational(1, n + 1));
      break;
    case Family::exponential1: {
      Rational f(1);
      for (int n = 1; n <= order; ++n) {
        f *= n;
        m.push_back(f);
      }
      break;
    }
    case Family::stdnormal: {
      Rational double_factorial(1);  // (n-1)!! for even n
      for (int n = 1; n <= order; ++n) {
        if (n % 2 == 1) {
          m.emplace_back(0);
        } else {
          double_factorial *= (n - 1);
          m.push_back(double_factorial);
        }
      }
      break;
    }
    case Family::twopoint: {
      const Rational p(p_), x0(x0_), x1(x1_);
      Rational a(1), b(1);
      for (int n = 1; n <= order; ++n) {
        a *= x0;
        b *= x1;
        m.push_back((Rational(1) - p) * a + p * b);
      }
      break;
    }
    default:
      return std::nullopt;
  }
  return MomentSequence(std::move(m));
}

std::optional<RealMomentSequence> DistributionModel::empirical_moments(int order) const {
  if (family_ != Family::empirical) return std::nullopt;
  if (order < 1) throw ModelError("moment order must be positive");
  std::vector<double> m(order, 0.0);
  for (double x : samples_) {
    double power = 1.0;
    for (int n = 0; n < order; ++n) {
      power *= x;
      m[n] += power;
    }
  }
  for (double& v : m) v /= static_cast<double>(samples_.size());
  return RealMomentSequence(std::move(m));
}

double DistributionModel::integrate_step(double lo, double hi) const {
  // F is constant between consecutive jumps.
  auto it = std::upper_bound(jumps_.begin(), jumps_.end(), lo);
  double level = (it == jumps_.begin()) ? 0.0 : cumulative_[(it - jumps_.begin()) - 1];
  double total = 0.0;
  double x = lo;
  for (; it != jumps_.end() && *it < hi; ++it) {
    total += level * (*it - x);
    x = *it;
    level = cumulative_[it - jumps_.begin()];
  }
  return total + level * (hi - x);
}

double DistributionModel::integrate_knots(double lo, double hi) const {
  // Trapezoid is exact on each linear piece; outside the knots F is constant.
  std::vector<double> cuts{lo};
  for (double t : knots_t_) {
    if (t > lo && t < hi) cuts.push_back(t);
  }
  cuts.push_back(hi);
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    total += 0.5 * (cdf(cuts[i - 1]) + cdf(cuts[i])) * (cuts[i] - cuts[i - 1]);
  }
  return total;
}

double DistributionModel::integrate_cdf(double lo, double hi) const {
  if (!(hi > lo)) return 0.0;
  if (has_step_cdf()) return integrate_step(lo, hi);
  if (family_ == Family::grid) return integrate_knots(lo, hi);
  return simpson([this](double t) { return cdf(t); }, lo, hi);
}

double DistributionModel::integrate_survival(double lo, double hi) const {
  if (!(hi > lo)) return 0.0;
  if (has_step_cdf() || family_ == Family::grid) return (hi - lo) - integrate_cdf(lo, hi);
  return simpson([this](double t) { return survival(t); }, lo, hi);
}

std::vector<double> DistributionModel::draw(std::size_t count, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out;
  out.reserve(count);
  switch (family_) {
    case Family::uniform01:
      for (std::size_t i = 0; i < count; ++i) out.push_back(unit(rng));
      break;
    case Family::exponential1:
      for (std::size_t i = 0; i < count; ++i) out.push_back(-std::log1p(-unit(rng)));
      break;
    case Family::stdnormal: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (std::size_t i = 0; i < count; ++i) out.push_back(normal(rng));
      break;
    }
    case Family::twopoint:
      for (std::size_t i = 0; i < count; ++i) out.push_back(unit(rng) < p_ ? x1_ : x0_);
      break;
    case Family::empirical: {
      std::uniform_int_distribution<std::size_t> pick(0, samples_.size() - 1);
      for (std::size_t i = 0; i < count; ++i) out.push_back(samples_[pick(rng)]);
      break;
    }
    case Family::grid:
      for (std::size_t i = 0; i < count; ++i) {
        const double u = unit(rng);
        double lo = knots_t_.front(), hi = knots_t_.back();
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          (cdf(mid) < u ? lo : hi) = mid;
        }
        out.push_back(0.5 * (lo + hi));
      }
      break;
  }
  return out;
}

DistributionModel builtin(std::string_view spec) {
  if (spec == "uniform01") return DistributionModel::uniform01();
  if (spec == "exponential1") return DistributionModel::exponential1();
  if (spec == "stdnormal") return DistributionModel::stdnormal();
  constexpr std::string_view prefix = "twopoint(";
  if (spec.starts_with(prefix) && spec.ends_with(")")) {
    std::string_view args = spec.substr(prefix.size(), spec.size() - prefix.size() - 1);
    double values[3];
    for (int i = 0; i < 3; ++i) {
      const auto comma = args.find(',');
      if ((i < 2) == (comma == std::string_view::npos)) {
        throw ParseError("twopoint expects three arguments: twopoint(p,x0,x1)");
      }
      std::string_view token = args.substr(0, comma);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      const auto res = std::from_chars(token.data(), token.data() + token.size(), values[i]);
      if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw ParseError("bad twopoint argument '" + std::string(token) + "'");
      }
      args = (comma == std::string_view::npos) ? std::string_view{} : args.substr(comma + 1);
    }
    return DistributionModel::twopoint(values[0], values[1], values[2]);
  }
  throw ParseError("unknown distribution '" + std::string(spec) + "'");
}

namespace {

double bisect_crossing(auto&& below, double inside, double outside) {
  // below(outside) holds, below(inside) does not; returns a point where it holds.
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    (below(mid) ? outside : inside) = mid;
    if (std::abs(inside - outside) <= 1e-13 * std::max(1.0, std::abs(outside))) break;
  }
  return outside;
}

// Walks from `start` in `direction` with doubling steps until pred holds.
double expand_until(auto&& pred, double start, double direction, double scale) {
  double x = start;
  double step = scale;
  for (int it = 0; it < 64; ++it) {
    if (pred(x)) return x;
    x += direction * step;
    step *= 2.0;
  }
  throw ModelError("truncate_support: cdf never reaches the tail level (constant or defective cdf)");
}

}  // namespace

SupportBounds truncate_support(const DistributionModel& d, double eps_tail) {
  if (!(eps_tail > 0.0 && eps_tail < 0.25)) throw ModelError("eps_tail must lie in (0, 1/4)");
  const auto hint = d.support_hint();
  const double scale = std::max(1.0, hint.hi - hint.lo);

  auto lower_ok = [&](double t) { return d.cdf(t) <= eps_tail; };
  auto upper_ok = [&](double t) { return d.survival(t) <= eps_tail; };

  SupportBounds out{};
  if (d.lower_bound_exact() && lower_ok(hint.lo)) {
    out.lo = hint.lo;
  } else {
    const double outside = expand_until(lower_ok, hint.lo, -1.0, scale);
    const double inside = expand_until([&](double t) { return !lower_ok(t); }, hint.hi, 1.0, scale);
    if (!(outside < inside)) throw ModelError("truncate_support: cdf is not monotone");
    out.lo = bisect_crossing(lower_ok, inside, outside);
  }
  if (d.upper_bound_exact() && upper_ok(hint.hi)) {
    out.hi = hint.hi;
  } else {
    const double outside = expand_until(upper_ok, hint.hi, 1.0, scale);
    const double inside = expand_until([&](double t) { return !upper_ok(t); }, hint.lo, -1.0, scale);
    if (!(inside < outside)) throw ModelError("truncate_support: cdf is not monotone");
    out.hi = bisect_crossing(upper_ok, inside, outside);
  }
  if (!(out.lo < out.hi)) throw ModelError("truncate_support: empty support interval");
  return out;
}

double mean_residual_life_R(const DistributionModel& d, double y, double eps_tail) {
  const double tail = d.survival(y);
  if (!(tail > kMrlGuard)) throw GuardError("R(y): 1 - F(y) too close to zero");
  const double b = truncate_support(d, eps_tail).hi;
  return d.integrate_survival(y, b) / tail;
}

double mean_residual_life_P(const DistributionModel& d, double y, double eps_tail) {
  const double mass = d.cdf(y);
  if (!(mass > kMrlGuard)) throw GuardError("P(y): F(y) too close to zero");
  const double a = truncate_support(d, eps_tail).lo;
  return d.integrate_cdf(a, y) / mass;
}

GridFunction sample_cdf(const DistributionModel& d, SupportBounds bounds, std::size_t points) {
  if (points < 3) throw ModelError("grid needs at least 3 points");
  if (!(bounds.lo < bounds.hi)) throw ModelError("grid bounds must satisfy lo < hi");
  const double step = (bounds.hi - bounds.lo) / static_cast<double>(points - 1);
  std::vector<double> values(points);
  for (std::size_t j = 0; j < points; ++j) {
    const double t = bounds.lo + static_cast<double>(j) * step;
    if (d.has_step_cdf()) {
      values[j] = clamp01(d.integrate_cdf(t - 0.5 * step, t + 0.5 * step) / step);
    } else {
      values[j] = clamp01(d.cdf(t));
    }
  }
  return GridFunction(bounds.lo, step, std::move(values));
}

}  // namespace cumulant

#include "cumulant/volterra.hpp"

#include <cmath>
#include <map>
#include <string>

#include "cumulant/parallel.hpp"

namespace cumulant {

namespace {

std::vector<double> inverse_factorials(int n) {
  std::vector<double> inv(n + 1, 1.0);
  for (int i = 1; i <= n; ++i) inv[i] = inv[i - 1] / i;
  return inv;
}

void check_order(int order, int max, const char* what) {
  if (order < 1 || order > max) {
    throw SizeLimitError(std::string(what) + ": order must lie in 1.." + std::to_string(max) +
                         ", got " + std::to_string(order));
  }
}

void check_tau(const SampledCdf& grid, double tau) {
  const double slack = 1e-9 * grid.cdf().step();
  if (!(tau >= grid.lo() - slack && tau <= grid.hi() + slack)) {
    throw RangeError("tau outside the truncated support [" + std::to_string(grid.lo()) + ", " +
                     std::to_string(grid.hi()) + "]");
  }
}

struct Term {
  std::vector<Letter> word;
  double coefficient;
};

// sum_i coefficient_i * integral(word_i), each distinct word integrated once.
// Integrals run in parallel; the reduction follows term order.
double evaluate_terms(const SampledCdf& grid, const std::vector<Term>& terms) {
  std::map<std::vector<Letter>, std::size_t> index;
  std::vector<const std::vector<Letter>*> words;
  for (const auto& t : terms) {
    if (index.emplace(t.word, words.size()).second) words.push_back(&t.word);
  }
  std::vector<double> values(words.size());
  parallel_for(words.size(), [&](std::size_t i) { values[i] = grid.iterated_integral(*words[i]); });
  double total = 0.0;
  for (const auto& t : terms) total += t.coefficient * values[index.at(t.word)];
  return total;
}

double signed_factorial(int n) {
  const double f = static_cast<double>(factorial(n));
  return (n % 2 == 0) ? f : -f;
}

}  // namespace

GridFunction volterra_apply(const GridFunction& g) {
  std::vector<double> out(g.size(), 0.0);
  const double half_step = 0.5 * g.step();
  for (std::size_t j = 1; j < g.size(); ++j) {
    out[j] = out[j - 1] + half_step * (g[j - 1] + g[j]);
  }
  return GridFunction(g.lo(), g.step(), std::move(out));
}

std::vector<Letter> word_from_mask(std::span<const std::uint8_t> mask) {
  std::vector<Letter> word;
  word.reserve(mask.size());
  for (auto e : mask) word.push_back(e ? Letter::cdf : Letter::lebesgue);
  return word;
}

SampledCdf SampledCdf::build(const DistributionModel& d, const GridOptions& options) {
  if (options.grid_points < 3) throw ModelError("grid_points must be at least 3");
  return SampledCdf(sample_cdf(d, truncate_support(d, options.eps_tail), options.grid_points));
}

SampledCdf::SampledCdf(GridFunction cdf) : cdf_(std::move(cdf)) {
  cdf_increments_.resize(cdf_.size() - 1);
  const double half_step = 0.5 * cdf_.step();
  for (std::size_t j = 0; j + 1 < cdf_.size(); ++j) {
    cdf_increments_[j] = half_step * (cdf_[j] + cdf_[j + 1]);
  }
}

double SampledCdf::iterated_integral(std::span<const Letter> word) const {
  const int n = static_cast<int>(word.size());
  if (n == 0) return 1.0;
  const auto inv_fact = inverse_factorials(n);
  const double h = cdf_.step();
  // prefix[k] = integral of the first k letters up to the current node.
  std::vector<double> prefix(n + 1, 0.0);
  prefix[0] = 1.0;
  std::vector<double> d(n);
  for (double dA : cdf_increments_) {
    for (int i = 0; i < n; ++i) {
      switch (word[i]) {
        case Letter::cdf: d[i] = dA; break;
        case Letter::lebesgue: d[i] = h; break;
        case Letter::survival: d[i] = h - dA; break;
      }
    }
    // Chen: S_new[k] = sum_{l<=k} S[l] * prod_{i=l+1..k} d_i / (k-l)!.
    for (int k = n; k >= 1; --k) {
      double acc = prefix[k];
      double segment = 1.0;
      for (int l = k - 1; l >= 0; --l) {
        segment *= d[l];
        acc += prefix[l] * segment * inv_fact[k - l];
      }
      prefix[k] = acc;
    }
  }
  return prefix[n];
}

CumulativeGrid::CumulativeGrid(const GridFunction& base, int max_level) {
  if (max_level < 0 || max_level > kMaxIteratedOrder) {
    throw SizeLimitError("CumulativeGrid: level must lie in 0.." + std::to_string(kMaxIteratedOrder));
  }
  levels_.push_back(base);
  if (max_level == 0) return;

  const std::size_t size = base.size();
  const double h = base.step();
  const auto inv_fact = inverse_factorials(max_level);
  std::vector<std::vector<double>> values(max_level + 1, std::vector<double>(size, 0.0));
  // Word (cdf, dt, dt, ...): prefix of length k is F^[k].
  std::vector<double> prefix(max_level + 1, 0.0);
  prefix[0] = 1.0;
  for (std::size_t j = 0; j + 1 < size; ++j) {
    const double dA = 0.5 * h * (base[j] + base[j + 1]);
    for (int k = max_level; k >= 1; --k) {
      double acc = prefix[k];
      double segment = 1.0;
      for (int l = k - 1; l >= 0; --l) {
        segment *= (l == 0) ? dA : h;
        acc += prefix[l] * segment * inv_fact[k - l];
      }
      prefix[k] = acc;
    }
    for (int k = 1; k <= max_level; ++k) values[k][j + 1] = prefix[k];
  }
  for (int k = 1; k <= max_level; ++k) {
    levels_.emplace_back(base.lo(), h, std::move(values[k]));
  }
}

double iterated_cdf(const SampledCdf& grid, int n, double tau) {
  if (n < 0 || n > kMaxIteratedOrder) {
    throw SizeLimitError("iterated_cdf: n must lie in 0.." + std::to_string(kMaxIteratedOrder));
  }
  check_tau(grid, tau);
  return CumulativeGrid(grid.cdf(), n).evaluate(n, tau);
}

double iterated_cdf(const DistributionModel& d, int n, double tau, const GridOptions& options) {
  return iterated_cdf(SampledCdf::build(d, options), n, tau);
}

std::vector<double> truncated_y_moments(const SampledCdf& grid, double tau, int order) {
  check_order(order, kMaxIteratedOrder, "truncated_y_moments");
  check_tau(grid, tau);
  const CumulativeGrid levels(grid.cdf(), order);
  std::vector<double> y(order);
  for (int k = 1; k <= order; ++k) y[k - 1] = signed_factorial(k) * levels.evaluate(k, tau);
  return y;
}

std::vector<double> truncated_y_moments(const DistributionModel& d, double tau, int order,
                                        const GridOptions& options) {
  return truncated_y_moments(SampledCdf::build(d, options), tau, order);
}

RealCumulantSequence cumulants_via_truncated(const SampledCdf& grid, int order,
                                             std::optional<double> tau) {
  const double shift = tau.value_or(grid.hi());
  const auto y = truncated_y_moments(grid, shift, order);
  return translate_cumulants(moments_to_cumulants(RealMomentSequence(y)), shift);
}

RealCumulantSequence cumulants_via_truncated(const DistributionModel& d, int order,
                                             std::optional<double> tau, const GridOptions& options) {
  return cumulants_via_truncated(SampledCdf::build(d, options), order, tau);
}

double simplex_partition_integral(const SampledCdf& grid, const SetPartition& pi) {
  check_order(pi.size(), kMaxIteratedOrder, "simplex_partition_integral");
  return grid.iterated_integral(word_from_mask(block_min_mask(pi)));
}

double simplex_partition_integral(const DistributionModel& d, const SetPartition& pi,
                                  const GridOptions& options) {
  return simplex_partition_integral(SampledCdf::build(d, options), pi);
}

namespace {

double mean_from_cdf(const SampledCdf& grid) {
  const Letter word[] = {Letter::cdf};
  return grid.hi() - grid.iterated_integral(word);
}

}  // namespace

RealCumulantSequence cumulants_via_theorem1(const SampledCdf& grid, int order) {
  check_order(order, kMaxSimplexRouteOrder, "cumulants_via_theorem1");
  std::vector<double> kappa{mean_from_cdf(grid)};
  for (int n = 2; n <= order; ++n) {
    std::vector<Term> terms;
    for_each_partition(n, [&](const SetPartition& pi) {
      terms.push_back({word_from_mask(block_min_mask(pi)), static_cast<double>(mobius_to_top(pi))});
    });
    kappa.push_back(signed_factorial(n) * evaluate_terms(grid, terms));
  }
  return RealCumulantSequence(std::move(kappa));
}

RealCumulantSequence cumulants_via_theorem1(const DistributionModel& d, int order,
                                            const GridOptions& options) {
  check_order(order, kMaxSimplexRouteOrder, "cumulants_via_theorem1");
  return cumulants_via_theorem1(SampledCdf::build(d, options), order);
}

RealCumulantSequence cumulants_via_factorized(const SampledCdf& grid, int order) {
  check_order(order, kMaxSimplexRouteOrder, "cumulants_via_factorized");
  std::vector<double> kappa{mean_from_cdf(grid)};
  for (int n = 2; n <= order; ++n) {
    std::vector<Term> terms;
    for_each_partition(n - 1, [&](const SetPartition& pi) {
      auto word = word_from_mask(block_min_mask(pi));
      word.push_back(Letter::survival);
      terms.push_back({std::move(word),
                       static_cast<double>(pi.block_count() * mobius_to_top(pi))});
    });
    kappa.push_back(signed_factorial(n) * evaluate_terms(grid, terms));
  }
  return RealCumulantSequence(std::move(kappa));
}

RealCumulantSequence cumulants_via_factorized(const DistributionModel& d, int order,
                                              const GridOptions& options) {
  check_order(order, kMaxSimplexRouteOrder, "cumulants_via_factorized");
  return cumulants_via_factorized(SampledCdf::build(d, options), order);
}

double cumulants_via_mrl(const SampledCdf& grid, int n) {
  if (n != 3 && n != 4) throw SizeLimitError("cumulants_via_mrl: n must be 3 or 4");
  const GridFunction& F = grid.cdf();
  const std::size_t size = F.size();
  const GridFunction below = volterra_apply(F);  // int_a^t F
  const double total_below = below[size - 1];

  // P(t) F(t) and (1 - F(t)) R(t) on the grid, through R and P themselves.
  std::vector<double> head(size, 0.0), tail(size, 0.0);
  for (std::size_t j = 0; j < size; ++j) {
    const double f = F[j];
    if (f > kMrlGuard) {
      const double P = below[j] / f;
      head[j] = P * f;
    }
    if (1.0 - f > kMrlGuard) {
      const double upper = (F.hi() - F.node(j)) - (total_below - below[j]);  // int_t^b (1 - F)
      const double R = upper / (1.0 - f);
      tail[j] = (1.0 - f) * R;
    }
  }

  // Positions t_2 < ... < t_{n-1}; nested trapezoid h_i = V(w_i h_{i-1}).
  auto nested = [&](std::span<const std::uint8_t> mask) {
    const std::size_t positions = mask.size() - 1;  // mask over t_1..t_{n-1}
    std::vector<double> carry(size, 1.0);
    for (std::size_t p = 1; p <= positions; ++p) {
      std::vector<double> w(size);
      for (std::size_t j = 0; j < size; ++j) {
        double v = carry[j] * (mask[p] ? F[j] : 1.0);
        if (p == 1) v *= head[j];
        if (p == positions) v *= tail[j];
        w[j] = v;
      }
      const GridFunction integrated = volterra_apply(GridFunction(F.lo(), F.step(), std::move(w)));
      carry.assign(integrated.values().begin(), integrated.values().end());
    }
    return carry.back();
  };

  double total = 0.0;
  for_each_partition(n - 1, [&](const SetPartition& pi) {
    const auto mask = block_min_mask(pi);
    total += static_cast<double>(pi.block_count() * mobius_to_top(pi)) * nested(mask);
  });
  return signed_factorial(n) * total;
}

double cumulants_via_mrl(const DistributionModel& d, int n, const GridOptions& options) {
  if (n != 3 && n != 4) throw SizeLimitError("cumulants_via_mrl: n must be 3 or 4");
  return cumulants_via_mrl(SampledCdf::build(d, options), n);
}

double verify_shuffle_relation(const SampledCdf& grid, int m, int n) {
  if (m < 0 || n < 0 || m + n < 1 || m + n > kMaxSimplexRouteOrder) {
    throw SizeLimitError("verify_shuffle_relation: need m, n >= 0 and 1 <= m + n <= 6");
  }
  auto power = [&](int k) {
    if (k == 0) return 1.0;
    std::vector<Letter> word(k, Letter::lebesgue);
    word[0] = Letter::cdf;
    return grid.iterated_integral(word);
  };
  const double lhs = power(m) * power(n);

  const int decks[] = {m, n};
  double rhs = 0.0;
  for (const auto& s : enumerate_shuffles(decks)) {
    std::vector<Letter> word(m + n, Letter::lebesgue);
    for (const auto& placement : s.placements) {
      if (!placement.empty()) word[placement.front() - 1] = Letter::cdf;
    }
    rhs += grid.iterated_integral(word);
  }
  return std::abs(lhs - rhs);
}

double verify_shuffle_relation(const DistributionModel& d, int m, int n, const GridOptions& options) {
  return verify_shuffle_relation(SampledCdf::build(d, options), m, n);
}

}  // namespace cumulant

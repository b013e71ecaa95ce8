#pragma once

// Exact moment <-> cumulant transforms over the partition lattice.
//
// Sequences are 1-based (m_1..m_N, with m_0 = 1 implied). The transforms are
// templates over the scalar so the same code runs on exact rationals (the
// default) and on doubles (empirical measures, multivariate tables).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cumulant/error.hpp"
#include "cumulant/partitions.hpp"

namespace cumulant {

using Rational = boost::multiprecision::cpp_rational;

/// Largest order accepted by the univariate transforms.
inline constexpr int kMaxTransformOrder = 8;
/// Largest number of variables accepted by the multivariate transform.
inline constexpr int kMaxMultivariateOrder = 6;

struct MomentTag {};
struct CumulantTag {};

/// A finite sequence a_1..a_N of moments or cumulants.
template <class T, class Tag>
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<T> values) : values_(std::move(values)) {
    if (values_.empty()) throw ModelError("sequence must have order >= 1");
  }

  int order() const noexcept { return static_cast<int>(values_.size()); }
  /// 1-based access; index 0 is the implicit normalization a_0 = 1.
  T operator[](int n) const {
    if (n == 0) return T(1);
    return values_.at(static_cast<std::size_t>(n - 1));
  }
  std::span<const T> values() const noexcept { return values_; }

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::vector<T> values_;
};

using MomentSequence = Sequence<Rational, MomentTag>;
using CumulantSequence = Sequence<Rational, CumulantTag>;
using RealMomentSequence = Sequence<double, MomentTag>;
using RealCumulantSequence = Sequence<double, CumulantTag>;

namespace detail {

inline void check_transform_order(int order) {
  if (order > kMaxTransformOrder) {
    throw SizeLimitError("transform order " + std::to_string(order) + " exceeds " +
                         std::to_string(kMaxTransformOrder));
  }
}

template <class T>
T binomial(int n, int k) {
  T b(1);
  for (int i = 1; i <= k; ++i) {
    b *= T(n - k + i);
    b /= T(i);
  }
  return b;
}

// sum over pi in Pi_n of weight(pi) * prod_{B in pi} a_{|B|}.
template <class T, class Weight>
T partition_sum(int n, std::span<const T> a, Weight weight) {
  T total(0);
  for_each_partition(n, [&](const SetPartition& pi) {
    T term(weight(pi));
    for (const auto& block : pi.blocks()) term *= a[block.size() - 1];
    total += term;
  });
  return total;
}

}  // namespace detail

/// kappa_n = sum_{pi in Pi_n} m_pi mu(pi, 1_n).
template <class T>
Sequence<T, CumulantTag> moments_to_cumulants(const Sequence<T, MomentTag>& m) {
  detail::check_transform_order(m.order());
  std::vector<T> k(m.order());
  for (int n = 1; n <= m.order(); ++n) {
    k[n - 1] = detail::partition_sum<T>(
        n, m.values(), [](const SetPartition& pi) { return T(mobius_to_top(pi)); });
  }
  return Sequence<T, CumulantTag>(std::move(k));
}

/// Same transform grouped by partition type:
/// kappa_n = sum_{lambda |- n} FdB(lambda) m_lambda mu_lambda.
template <class T>
Sequence<T, CumulantTag> moments_to_cumulants_by_type(const Sequence<T, MomentTag>& m) {
  detail::check_transform_order(m.order());
  std::vector<T> k(m.order());
  for (int n = 1; n <= m.order(); ++n) {
    T total(0);
    for (const auto& lambda : enumerate_types(n)) {
      T term(static_cast<std::int64_t>(faa_di_bruno_count(lambda)));
      term *= T(mobius_to_top(lambda.block_count()));
      for (int part : lambda.parts()) term *= m[part];
      total += term;
    }
    k[n - 1] = total;
  }
  return Sequence<T, CumulantTag>(std::move(k));
}

/// m_n = sum_{pi in Pi_n} kappa_pi.
template <class T>
Sequence<T, MomentTag> cumulants_to_moments(const Sequence<T, CumulantTag>& k) {
  detail::check_transform_order(k.order());
  std::vector<T> m(k.order());
  for (int n = 1; n <= k.order(); ++n) {
    m[n - 1] = detail::partition_sum<T>(n, k.values(), [](const SetPartition&) { return T(1); });
  }
  return Sequence<T, MomentTag>(std::move(m));
}

/// Moments of X + tau: m_n(X+tau) = sum_k C(n,k) tau^(n-k) m_k(X).
template <class T>
Sequence<T, MomentTag> translate_moments(const Sequence<T, MomentTag>& m, const T& tau) {
  std::vector<T> out(m.order());
  for (int n = 1; n <= m.order(); ++n) {
    T total(0);
    T power(1);  // tau^(n-k), k descending from n
    for (int k = n; k >= 0; --k) {
      total += detail::binomial<T>(n, k) * power * m[k];
      power *= tau;
    }
    out[n - 1] = total;
  }
  return Sequence<T, MomentTag>(std::move(out));
}

/// Cumulants of X + tau: only kappa_1 moves.
template <class T>
Sequence<T, CumulantTag> translate_cumulants(const Sequence<T, CumulantTag>& k, const T& tau) {
  std::vector<T> out(k.values().begin(), k.values().end());
  out[0] += tau;
  return Sequence<T, CumulantTag>(std::move(out));
}

/// Moments of X + Y for independent X and Y (binomial convolution).
template <class T>
Sequence<T, MomentTag> independent_sum_moments(const Sequence<T, MomentTag>& x,
                                               const Sequence<T, MomentTag>& y) {
  const int order = std::min(x.order(), y.order());
  std::vector<T> out(order);
  for (int n = 1; n <= order; ++n) {
    T total(0);
    for (int k = 0; k <= n; ++k) total += detail::binomial<T>(n, k) * x[k] * y[n - k];
    out[n - 1] = total;
  }
  return Sequence<T, MomentTag>(std::move(out));
}

/// Mixed moments E prod_{i in I} X_i for every nonempty I of {1..n},
/// addressed by bit mask (bit i-1 set iff i in I).
class MultivariateMomentTable {
 public:
  explicit MultivariateMomentTable(int variables);
  /// Empirical mixed moments of equally weighted sample rows.
  static MultivariateMomentTable from_samples(std::span<const std::vector<double>> rows);

  int variables() const noexcept { return n_; }
  double mixed_moment(std::uint32_t subset) const;
  void set_mixed_moment(std::uint32_t subset, double value);
  double mean(int variable) const { return mixed_moment(1u << (variable - 1)); }

 private:
  void check_subset(std::uint32_t subset) const;

  int n_;
  std::vector<double> values_;  // index = subset mask; values_[0] = 1
};

/// kappa_n(X_1..X_n) = sum_pi mu(pi, 1_n) prod_{B in pi} E prod_{i in B} X_i.
double multivariate_moments_to_cumulant(const MultivariateMomentTable& table);

/// Exact conversion to double (nearest representable value).
inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Elementwise conversion of a rational sequence.
template <class Tag>
Sequence<double, Tag> to_real(const Sequence<Rational, Tag>& s) {
  std::vector<double> out;
  for (const auto& v : s.values()) out.push_back(to_double(v));
  return Sequence<double, Tag>(std::move(out));
}

}  // namespace cumulant

#pragma once

// Independent oracles for the tests: truncated formal power series over the
// rationals (log/exp of the exponential generating function) and the Bell
// triangle.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

// Coefficients c_0..c_N of a power series truncated after t^N.
using Series = std::vector<Q>;

inline Series multiply(const Series& a, const Series& b) {
  Series c(a.size(), Q(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// log(1 + u) = sum_{k>=1} (-1)^{k+1} u^k / k for u with zero constant term.
inline Series log_one_plus(const Series& u) {
  Series out(u.size(), Q(0));
  Series power = u;
  for (std::size_t k = 1; k < u.size(); ++k) {
    const Q sign = (k % 2 == 1) ? Q(1) : Q(-1);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] += sign * power[i] / Q(static_cast<long>(k));
    power = multiply(power, u);
  }
  return out;
}

// exp(u) = sum_k u^k / k! for u with zero constant term.
inline Series exp_series(const Series& u) {
  Series out(u.size(), Q(0));
  out[0] = 1;
  Series power(u.size(), Q(0));
  power[0] = 1;
  Q factorial = 1;
  for (std::size_t k = 1; k < u.size(); ++k) {
    power = multiply(power, u);
    factorial *= Q(static_cast<long>(k));
    for (std::size_t i = 0; i < u.size(); ++i) out[i] += power[i] / factorial;
  }
  return out;
}

inline Q factorial(int n) {
  Q f = 1;
  for (int i = 2; i <= n; ++i) f *= Q(i);
  return f;
}

// kappa_n = n! [t^n] log(sum_n m_n t^n / n!), moments given as m_1..m_N.
inline std::vector<Q> cumulants_from_moments(const std::vector<Q>& m) {
  Series u(m.size() + 1, Q(0));
  for (std::size_t n = 1; n <= m.size(); ++n) u[n] = m[n - 1] / factorial(static_cast<int>(n));
  const Series k = log_one_plus(u);
  std::vector<Q> out;
  for (std::size_t n = 1; n <= m.size(); ++n) out.push_back(k[n] * factorial(static_cast<int>(n)));
  return out;
}

// m_n = n! [t^n] exp(sum_n kappa_n t^n / n!).
inline std::vector<Q> moments_from_cumulants(const std::vector<Q>& kappa) {
  Series u(kappa.size() + 1, Q(0));
  for (std::size_t n = 1; n <= kappa.size(); ++n) u[n] = kappa[n - 1] / factorial(static_cast<int>(n));
  const Series m = exp_series(u);
  std::vector<Q> out;
  for (std::size_t n = 1; n <= kappa.size(); ++n) out.push_back(m[n] * factorial(static_cast<int>(n)));
  return out;
}

// Bell numbers B_0..B_N from the Aitken triangle.
inline std::vector<std::uint64_t> bell_numbers(int n_max) {
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

// Stirling numbers of the second kind S(n, k), 0 <= k <= n <= n_max.
inline std::vector<std::vector<std::uint64_t>> stirling2(int n_max) {
  std::vector<std::vector<std::uint64_t>> s(n_max + 1, std::vector<std::uint64_t>(n_max + 1, 0));
  s[0][0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 1; k <= n; ++k) s[n][k] = static_cast<std::uint64_t>(k) * s[n - 1][k] + s[n - 1][k - 1];
  }
  return s;
}

}  // namespace oracle

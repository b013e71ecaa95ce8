#include "cumulant/momentcalc.hpp"

#include <cmath>

namespace cumulant {

MultivariateMomentTable::MultivariateMomentTable(int variables) : n_(variables) {
  if (variables < 1 || variables > kMaxMultivariateOrder) {
    throw SizeLimitError("multivariate moment table needs 1 <= n <= " +
                         std::to_string(kMaxMultivariateOrder));
  }
  values_.assign(std::size_t{1} << variables, 0.0);
  values_[0] = 1.0;
}

MultivariateMomentTable MultivariateMomentTable::from_samples(
    std::span<const std::vector<double>> rows) {
  if (rows.empty()) throw ModelError("no sample rows");
  const auto n = static_cast<int>(rows.front().size());
  MultivariateMomentTable table(n);
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t subset = 1; subset <= full; ++subset) {
    double sum = 0.0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n) throw ModelError("ragged sample rows");
      double product = 1.0;
      for (int i = 0; i < n; ++i) {
        if (subset & (1u << i)) product *= row[i];
      }
      sum += product;
    }
    table.values_[subset] = sum / static_cast<double>(rows.size());
  }
  return table;
}

void MultivariateMomentTable::check_subset(std::uint32_t subset) const {
  if (subset == 0 || subset >= values_.size()) {
    throw ModelError("subset mask out of range for a table of " + std::to_string(n_) +
                     " variables");
  }
}

double MultivariateMomentTable::mixed_moment(std::uint32_t subset) const {
  check_subset(subset);
  return values_[subset];
}

void MultivariateMomentTable::set_mixed_moment(std::uint32_t subset, double value) {
  check_subset(subset);
  if (!std::isfinite(value)) throw ModelError("mixed moments must be finite");
  values_[subset] = value;
}

double multivariate_moments_to_cumulant(const MultivariateMomentTable& table) {
  double total = 0.0;
  for_each_partition(table.variables(), [&](const SetPartition& pi) {
    double term = static_cast<double>(mobius_to_top(pi));
    for (const auto& block : pi.blocks()) {
      std::uint32_t mask = 0;
      for (int e : block) mask |= 1u << (e - 1);
      term *= table.mixed_moment(mask);
    }
    total += term;
  });
  return total;
}

}  // namespace cumulant

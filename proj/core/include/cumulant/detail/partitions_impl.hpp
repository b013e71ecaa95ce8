#pragma once

#include <string>
#include <utility>

#include "cumulant/error.hpp"

namespace cumulant {

namespace detail {

inline void check_enumeration_order(int n) {
  if (n < 1 || n > kMaxEnumerationOrder) {
    throw SizeLimitError("partition enumeration requires 1 <= n <= " +
                         std::to_string(kMaxEnumerationOrder) + ", got " +
                         std::to_string(n));
  }
}

// Advances a restricted growth string to its lexicographic successor.
// prefix_max[i] caches max(labels[0..i]). Returns false after the last one.
inline bool next_restricted_growth(std::vector<int>& labels, std::vector<int>& prefix_max) {
  const int n = static_cast<int>(labels.size());
  for (int i = n - 1; i > 0; --i) {
    if (labels[i] <= prefix_max[i - 1]) {
      ++labels[i];
      prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
      for (int j = i + 1; j < n; ++j) {
        labels[j] = 0;
        prefix_max[j] = prefix_max[i];
      }
      return true;
    }
  }
  return false;
}

}  // namespace detail

template <class F>
void for_each_partition(int n, F&& f) {
  detail::check_enumeration_order(n);
  std::vector<int> labels(n, 0);
  std::vector<int> prefix_max(n, 0);
  do {
    f(SetPartition::from_restricted_growth(labels));
  } while (detail::next_restricted_growth(labels, prefix_max));
}

}  // namespace cumulant

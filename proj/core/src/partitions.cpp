#include "cumulant/partitions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace cumulant {

namespace {

void check_ground_set(int n) {
  if (n < 1) throw ModelError("ground set size must be positive");
}

}  // namespace

SetPartition SetPartition::from_blocks(int n, std::vector<std::vector<int>> blocks) {
  check_ground_set(n);
  std::vector<int> seen(n + 1, 0);
  for (auto& block : blocks) {
    if (block.empty()) throw ModelError("partition blocks must be nonempty");
    std::sort(block.begin(), block.end());
    for (int e : block) {
      if (e < 1 || e > n) throw ModelError("block element out of range 1..n");
      if (seen[e]++) throw ModelError("blocks are not disjoint");
    }
  }
  if (std::count(seen.begin() + 1, seen.end(), 1) != n) {
    throw ModelError("blocks do not cover {1..n}");
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return SetPartition(n, std::move(blocks));
}

SetPartition SetPartition::from_restricted_growth(std::span<const int> labels) {
  const int n = static_cast<int>(labels.size());
  check_ground_set(n);
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) {
    const int label = labels[i];
    if (label < 0 || label > static_cast<int>(blocks.size())) {
      throw ModelError("not a restricted growth string");
    }
    if (label == static_cast<int>(blocks.size())) blocks.emplace_back();
    blocks[label].push_back(i + 1);
  }
  return SetPartition(n, std::move(blocks));
}

SetPartition SetPartition::finest(int n) {
  std::vector<int> labels(std::max(n, 0));
  std::iota(labels.begin(), labels.end(), 0);
  return from_restricted_growth(labels);
}

SetPartition SetPartition::coarsest(int n) {
  std::vector<int> labels(std::max(n, 0), 0);
  return from_restricted_growth(labels);
}

std::vector<int> SetPartition::restricted_growth() const {
  std::vector<int> labels(n_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (int e : blocks_[b]) labels[e - 1] = static_cast<int>(b);
  }
  return labels;
}

PartitionType PartitionType::from_multiplicities(std::vector<int> multiplicities) {
  int n = 0;
  for (std::size_t j = 0; j < multiplicities.size(); ++j) {
    if (multiplicities[j] < 0) throw ModelError("multiplicities must be nonnegative");
    n += static_cast<int>(j + 1) * multiplicities[j];
  }
  if (n < 1) throw ModelError("partition type of an empty set");
  multiplicities.resize(n, 0);
  PartitionType t;
  t.n_ = n;
  t.k_ = std::move(multiplicities);
  return t;
}

int PartitionType::multiplicity(int block_size) const {
  if (block_size < 1 || block_size > n_) return 0;
  return k_[block_size - 1];
}

int PartitionType::block_count() const noexcept {
  return std::accumulate(k_.begin(), k_.end(), 0);
}

std::vector<int> PartitionType::parts() const {
  std::vector<int> out;
  for (int j = n_; j >= 1; --j) out.insert(out.end(), k_[j - 1], j);
  return out;
}

int Shuffle::size() const noexcept {
  int n = 0;
  for (const auto& p : placements) n += static_cast<int>(p.size());
  return n;
}

std::vector<int> Shuffle::deck_sizes() const {
  std::vector<int> sizes;
  for (const auto& p : placements) sizes.push_back(static_cast<int>(p.size()));
  return sizes;
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw SizeLimitError("factorial argument out of range 0..20");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::vector<SetPartition> enumerate_partitions(int n) {
  std::vector<SetPartition> out;
  for_each_partition(n, [&](const SetPartition& pi) { out.push_back(pi); });
  return out;
}

std::int64_t mobius_to_top(int block_count) {
  if (block_count < 1) throw ModelError("block count must be positive");
  const auto magnitude = static_cast<std::int64_t>(factorial(block_count - 1));
  return (block_count % 2 == 1) ? magnitude : -magnitude;
}

std::int64_t mobius_to_top(const SetPartition& pi) { return mobius_to_top(pi.block_count()); }

PartitionType type_of(const SetPartition& pi) {
  std::vector<int> k(pi.size(), 0);
  for (const auto& block : pi.blocks()) ++k[block.size() - 1];
  return PartitionType::from_multiplicities(std::move(k));
}

std::uint64_t faa_di_bruno_count(const PartitionType& lambda) {
  // Exact for n <= 20: divide step by step so intermediates stay below n!.
  std::uint64_t count = factorial(lambda.size());
  for (int j = 1; j <= lambda.size(); ++j) {
    const int k = lambda.multiplicity(j);
    for (int r = 0; r < k; ++r) count /= factorial(j);
    count /= factorial(k);
  }
  return count;
}

std::vector<PartitionType> enumerate_types(int n) {
  detail::check_enumeration_order(n);
  std::vector<PartitionType> out;
  std::vector<int> k(n, 0);
  // Parts chosen in nonincreasing order, largest first.
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(PartitionType::from_multiplicities(k));
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      ++k[part - 1];
      rec(remaining - part, part);
      --k[part - 1];
    }
  };
  rec(n, n);
  return out;
}

std::uint64_t multinomial(std::span<const int> parts) {
  int n = 0;
  for (int p : parts) {
    if (p < 0) throw ModelError("multinomial parts must be nonnegative");
    n += p;
  }
  std::uint64_t result = factorial(n);
  for (int p : parts) result /= factorial(p);
  return result;
}

std::vector<Shuffle> enumerate_shuffles(std::span<const int> deck_sizes) {
  int n = 0;
  for (int d : deck_sizes) {
    if (d < 0) throw ModelError("deck sizes must be nonnegative");
    n += d;
  }
  detail::check_enumeration_order(n);

  std::vector<Shuffle> out;
  Shuffle current;
  current.placements.resize(deck_sizes.size());
  std::vector<int> free_positions(n);
  std::iota(free_positions.begin(), free_positions.end(), 1);

  // Places deck `d` on a lexicographic combination of the free positions.
  std::function<void(std::size_t, const std::vector<int>&)> place_deck =
      [&](std::size_t d, const std::vector<int>& open) {
        if (d == deck_sizes.size()) {
          out.push_back(current);
          return;
        }
        const auto k = static_cast<std::size_t>(deck_sizes[d]);
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
          auto& placement = current.placements[d];
          placement.clear();
          std::vector<int> rest;
          std::size_t next = 0;
          for (std::size_t i = 0; i < open.size(); ++i) {
            if (next < k && idx[next] == i) {
              placement.push_back(open[i]);
              ++next;
            } else {
              rest.push_back(open[i]);
            }
          }
          place_deck(d + 1, rest);

          // Next combination of k indices out of open.size().
          std::size_t i = k;
          while (i > 0 && idx[i - 1] == open.size() - k + (i - 1)) --i;
          if (i == 0) break;
          ++idx[i - 1];
          for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
      };
  place_deck(0, free_positions);
  return out;
}

SetPartition shuffle_to_partition(const Shuffle& s) {
  std::vector<std::vector<int>> blocks;
  for (const auto& p : s.placements) {
    if (!std::is_sorted(p.begin(), p.end(), std::less_equal<>())) {
      throw ModelError("shuffle placements must be strictly increasing");
    }
    if (!p.empty()) blocks.push_back(p);
  }
  return SetPartition::from_blocks(s.size(), std::move(blocks));
}

std::vector<std::uint8_t> block_min_mask(const SetPartition& pi) {
  std::vector<std::uint8_t> mask(pi.size(), 0);
  for (const auto& block : pi.blocks()) mask[block.front() - 1] = 1;
  return mask;
}

}  // namespace cumulant

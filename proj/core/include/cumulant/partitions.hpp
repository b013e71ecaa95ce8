#pragma once

// Exact combinatorics of the set-partition lattice: enumeration, Moebius
// values against the top element, partition types, Faa di Bruno counts and
// shuffles of ordered decks.

#include <cstdint>
#include <span>
#include <vector>

namespace cumulant {

/// Largest ground-set size accepted by the enumerators (Bell(12) = 4213597).
inline constexpr int kMaxEnumerationOrder = 12;

/// A partition of {1..n} into nonempty disjoint blocks.
///
/// Blocks are stored sorted ascending and ordered by their minimum element,
/// so two partitions compare equal iff they have the same blocks.
class SetPartition {
 public:
  /// Validates that `blocks` (1-based elements) partition {1..n}.
  static SetPartition from_blocks(int n, std::vector<std::vector<int>> blocks);
  /// Builds the partition encoded by a restricted growth string
  /// (labels start at 0, label[i] <= 1 + max(label[0..i-1])).
  static SetPartition from_restricted_growth(std::span<const int> labels);
  /// The partition into singletons.
  static SetPartition finest(int n);
  /// The one-block partition.
  static SetPartition coarsest(int n);

  int size() const noexcept { return n_; }
  int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
  int block_minimum(std::size_t block) const { return blocks_.at(block).front(); }
  /// Restricted growth string of this partition (0-based labels).
  std::vector<int> restricted_growth() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  SetPartition(int n, std::vector<std::vector<int>> blocks)
      : n_(n), blocks_(std::move(blocks)) {}

  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
};

/// Block-size multiplicities (k_1..k_n) of a number partition of n.
class PartitionType {
 public:
  /// `multiplicities[j-1]` is the number of blocks of size j.
  static PartitionType from_multiplicities(std::vector<int> multiplicities);

  int size() const noexcept { return n_; }
  int multiplicity(int block_size) const;
  const std::vector<int>& multiplicities() const noexcept { return k_; }
  int block_count() const noexcept;
  /// Block sizes in nonincreasing order, e.g. (2,1,1) for 1^2 2^1.
  std::vector<int> parts() const;

  friend bool operator==(const PartitionType&, const PartitionType&) = default;

 private:
  int n_ = 0;
  std::vector<int> k_;
};

/// An interleaving of ordered decks: placements[d] holds the strictly
/// increasing 1-based positions that deck d occupies in the merged sequence.
struct Shuffle {
  std::vector<std::vector<int>> placements;

  int size() const noexcept;
  std::vector<int> deck_sizes() const;
};

std::vector<SetPartition> enumerate_partitions(int n);

/// Moebius function mu(pi, 1_n) = (-1)^(|pi|-1) (|pi|-1)!.
std::int64_t mobius_to_top(const SetPartition& pi);
std::int64_t mobius_to_top(int block_count);

PartitionType type_of(const SetPartition& pi);

/// Number of set partitions of the given type:
/// n! / (prod_j (j!)^{k_j} k_j!).
std::uint64_t faa_di_bruno_count(const PartitionType& lambda);

/// All number partitions of n, in reverse lexicographic order of parts.
std::vector<PartitionType> enumerate_types(int n);

/// Multinomial coefficient (sum d)! / prod d!.
std::uint64_t multinomial(std::span<const int> parts);

/// All shuffles of decks of the given sizes. Decks may be empty. Ordered
/// lexicographically by placement of deck 0, then deck 1, and so on.
std::vector<Shuffle> enumerate_shuffles(std::span<const int> deck_sizes);

/// The partition whose blocks are the (nonempty) placement sets.
SetPartition shuffle_to_partition(const Shuffle& s);

/// mask[i] == 1 iff element i+1 is the minimum of its block.
std::vector<std::uint8_t> block_min_mask(const SetPartition& pi);

/// Calls f(const SetPartition&) for every partition of {1..n} in restricted
/// growth string order without materializing the whole list.
template <class F>
void for_each_partition(int n, F&& f);

std::uint64_t factorial(int n);

}  // namespace cumulant

#include "cumulant/detail/partitions_impl.hpp"

#pragma once

// Pair-recombination families over [n] and the constructive cover finder.
//
// A scheme splits the ground set into parts, and each part into disjoint
// pairs. Blocks are unions of three distinct pairs from one part. With two
// parts, any 6-subset has at least three elements in one part, and the pairs
// holding those three elements (padded with one more pair if two of them
// share a pair) form a block containing all three.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jcover/core.hpp"

namespace jcover {

struct PartitionScheme {
  Params params = Params::standard();
  // G_1, G_2, ... in order. Empty for schemes whose parts are not unions of
  // 6-element base blocks (e.g. the [2m] family when 6 does not divide m).
  std::vector<Block> base_blocks;
  // Number of consecutive base blocks per group; sums to base_blocks.size().
  std::vector<int> group_sizes;
  // Element set of each part.
  std::vector<Mask> parts;
  // For each part, its disjoint pairs in index order (P_1, P_2, ...).
  std::vector<std::vector<Block>> pair_partitions;

  std::size_t part_count() const noexcept { return parts.size(); }
  std::vector<int> part_sizes() const;

  // Throws kInvalidParams if the partition invariants do not hold.
  void validate() const;
};

// [60] split into {1..30} and {31..60}; P_i = {2i-1, 2i}, Q_i = {30+2i-1, 30+2i}.
PartitionScheme scheme_two_halves();

// [60] with base-block groups of sizes 3, 3, 4.
PartitionScheme scheme_grouped_334();

// [2m] split into {1..m} and {m+1..2m}, each cut into m/2 consecutive pairs.
// Throws kInvalidM unless m is even and m >= 6.
PartitionScheme scheme_generalized(int m);

// Consecutive base blocks G_i = {6(i-1)+1, ..., 6i} over [6 * sum(groups)],
// grouped consecutively; each base block contributes three consecutive pairs.
PartitionScheme scheme_from_groups(std::span<const int> group_sizes);

// All unions of three distinct pairs, in (i < j < k) lexicographic order.
// Throws kTooFewPairs or kOverlappingPairs.
std::vector<Block> recombine_triples(std::span<const Block> pairs);

Family family_910();
Family family_generalized(int m);
Family family_388();
Family family_828();

// The two augmented 12-pair pools that family_828 appends to family_388:
// G_4 with G_7, G_8, G_9, and G_5 with G_7, G_8, G_10.
std::vector<Block> pool_828_a();
std::vector<Block> pool_828_b();

// Recombined blocks of every part, concatenated part by part.
Family family_from_scheme(const PartitionScheme& scheme,
                          const std::string& provenance);

struct CoveringChoice {
  Block block;
  int part = 0;  // 0-based part index
};

// Precomputed lookup tables for find_covering_block on a bipartite scheme.
// Choice rule: the part holding more elements of s (ties go to the first
// part), then the pairs of that part's elements of s in ascending element
// order until three distinct pairs are taken. When s touches only two pairs
// there, the lowest-indexed unused pair pads the block.
class CoverFinder {
 public:
  // Throws kSchemeNotBipartite unless the scheme has exactly two parts with
  // at least three pairs each and params (k, threshold) = (6, 3).
  explicit CoverFinder(const PartitionScheme& scheme);

  CoveringChoice find(Block s) const noexcept;

 private:
  Mask parts_[2];
  // element bit -> pair index within its part
  int pair_of_[kMaxGroundSet];
  std::vector<Mask> pairs_[2];
};

CoveringChoice find_covering_block(Block s, const PartitionScheme& scheme);

struct CompositionProfile {
  std::vector<int> counts;
  // Π C(|U_t|, x_t); present only when part sizes were supplied.
  std::optional<Count> subset_count;
  bool guaranteed = false;  // some x_t >= threshold
};

// Nonnegative tuples of length `parts` summing to k, ascending
// lexicographically (x_1, then x_2, ...).
std::vector<CompositionProfile> enumerate_compositions(int k, int parts,
                                                       int threshold = 3);
std::vector<CompositionProfile> enumerate_compositions(
    int k, std::span<const int> part_sizes, int threshold = 3);

// (|s ∩ U_1|, ..., |s ∩ U_p|).
std::vector<int> composition_of(Block s, const PartitionScheme& scheme);

// A permutation of [n]; image[e - 1] is where element e goes.
struct Relabeling {
  std::vector<int> image;

  Mask apply(Mask mask) const noexcept;
  Block apply(Block b) const noexcept { return Block{apply(b.mask)}; }
  bool is_identity() const noexcept;
  std::string to_string() const;  // space-separated images of 1..n
};

Relabeling identity_relabeling(int n);
// Fisher-Yates driven by mt19937_64(seed).
Relabeling seeded_relabeling(int n, std::uint64_t seed);
// Throws kParse if the text is not a permutation of 1..n.
Relabeling parse_relabeling(const std::string& text, int n);

Family relabel(const Family& family, const Relabeling& relabeling);
PartitionScheme relabel(const PartitionScheme& scheme,
                        const Relabeling& relabeling);

}  // namespace jcover

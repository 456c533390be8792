#pragma once

// Ground-set parameters, bitmask blocks and k-subset enumeration.
//
// Elements are 1-indexed at every interface (element e lives in bit e-1).
// Subsets of [n] are 64-bit masks, so n is capped at 64. Colexicographic
// order of k-subsets coincides with increasing mask order, which makes the
// combinatorial number system rank monotone in the mask value.

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jcover/error.hpp"

namespace jcover {

using Mask = std::uint64_t;
using Count = std::uint64_t;

inline constexpr int kMaxGroundSet = 64;

namespace detail {

using BinomialTable = std::array<std::array<Count, kMaxGroundSet + 1>,
                                 kMaxGroundSet + 1>;

constexpr BinomialTable make_binomial_table() {
  BinomialTable t{};
  for (int n = 0; n <= kMaxGroundSet; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
  }
  return t;
}

// C(n, k) for 0 <= n, k <= 64; zero when k > n. Used on hot paths (ranking).
inline constexpr BinomialTable kBinomial = make_binomial_table();

}  // namespace detail

// C(n, k) evaluated with 128-bit intermediates. Zero when k < 0 or k > n.
// Throws kOutOfRange if the result does not fit in 64 bits.
Count binomial(int n, int k);

class Params {
 public:
  // Validates 1 <= k <= n <= 64 and 0 <= radius <= k.
  static Params make(int n, int k, int radius);
  // The (60, 6, 3) instance.
  static Params standard() { return make(60, 6, 3); }

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  int radius() const noexcept { return radius_; }
  // Minimum intersection a block must have with a subset to cover it.
  int threshold() const noexcept { return k_ - radius_; }

  Mask ground_mask() const noexcept {
    return n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
  }
  Count subset_count() const noexcept { return detail::kBinomial[n_][k_]; }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  Params(int n, int k, int radius) : n_(n), k_(k), radius_(radius) {}
  int n_;
  int k_;
  int radius_;
};

struct Block {
  Mask mask = 0;

  int size() const noexcept { return std::popcount(mask); }
  bool contains(int element) const noexcept {
    return element >= 1 && element <= 64 &&
           ((mask >> (element - 1)) & 1u) != 0;
  }
  // Ascending 1-indexed elements.
  std::vector<int> elements() const;
  std::string to_string() const;

  friend auto operator<=>(const Block&, const Block&) = default;
};

bool is_valid_block(Mask mask, const Params& params) noexcept;

// Throws kWrongCardinality, kOutOfRange or kDuplicateElement.
Block block_from_elements(std::span<const int> elements, const Params& params);

inline int intersection_size(Block a, Block b) noexcept {
  return std::popcount(a.mask & b.mask);
}

inline int johnson_distance(Block a, Block b) noexcept {
  return std::popcount(a.mask) - intersection_size(a, b);
}

// Colexicographic rank: sum of C(position_j, j) over the set bits taken in
// ascending order (j starting at 1).
inline Count rank_of(Mask mask) noexcept {
  Count rank = 0;
  int j = 1;
  while (mask != 0) {
    rank += detail::kBinomial[std::countr_zero(mask)][j++];
    mask &= mask - 1;
  }
  return rank;
}

// Inverse of rank_of for k-subsets of [n]. Requires rank < C(n, k).
Mask unrank(Count rank, int k, int n);

// Next mask with the same popcount (Gosper). Undefined for the last k-subset
// of a 64-element ground set, which callers never advance past.
inline Mask next_combination(Mask x) noexcept {
  const Mask low = x & (~x + 1);
  const Mask ripple = x + low;
  return ripple | (((x ^ ripple) >> 2) >> std::countr_zero(x));
}

// Half-open interval of colex ranks.
struct RankRange {
  Count begin = 0;
  Count end = 0;

  Count size() const noexcept { return end - begin; }
  friend bool operator==(const RankRange&, const RankRange&) = default;
};

// Walks the k-subsets of [n] whose rank lies in a range, in increasing mask
// order. Positioning costs one unrank; each step after that is O(1).
class SubsetCursor {
 public:
  SubsetCursor(const Params& params, RankRange range);

  bool done() const noexcept { return rank_ >= end_; }
  Count rank() const noexcept { return rank_; }
  Mask mask() const noexcept { return mask_; }
  void advance() noexcept {
    if (++rank_ < end_) mask_ = next_combination(mask_);
  }

 private:
  Count rank_;
  Count end_;
  Mask mask_ = 0;
};

// Input range over the k-subsets selected by a rank interval.
class KSubsets {
 public:
  struct Sentinel {};

  class Iterator {
   public:
    using value_type = Block;
    using difference_type = std::ptrdiff_t;

    explicit Iterator(SubsetCursor cursor) : cursor_(cursor) {}
    Block operator*() const noexcept { return Block{cursor_.mask()}; }
    Iterator& operator++() noexcept {
      cursor_.advance();
      return *this;
    }
    void operator++(int) noexcept { cursor_.advance(); }
    Count rank() const noexcept { return cursor_.rank(); }
    friend bool operator==(const Iterator& it, Sentinel) noexcept {
      return it.cursor_.done();
    }

   private:
    SubsetCursor cursor_;
  };

  KSubsets(const Params& params, RankRange range)
      : params_(params), range_(range) {}

  Iterator begin() const { return Iterator(SubsetCursor(params_, range_)); }
  Sentinel end() const noexcept { return {}; }
  Count size() const noexcept { return range_.size(); }

 private:
  Params params_;
  RankRange range_;
};

// All k-subsets, or those in `range`. Throws kRangeOutOfBounds when the range
// is not inside [0, C(n, k)).
KSubsets enumerate_k_subsets(const Params& params,
                             std::optional<RankRange> range = std::nullopt);

// Splits [0, total) into contiguous chunks of at most `chunk` ranks.
std::vector<RankRange> split_ranks(RankRange whole, Count chunk);

// An ordered, duplicate-free list of valid blocks plus a provenance tag.
class Family {
 public:
  // Throws kInvalidBlock or kDuplicateBlock.
  Family(const Params& params, std::vector<Block> blocks,
         std::string provenance);

  const Params& params() const noexcept { return params_; }
  std::span<const Block> blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  bool empty() const noexcept { return blocks_.empty(); }
  const std::string& provenance() const noexcept { return provenance_; }

  bool contains(Block b) const noexcept;
  std::vector<Mask> masks() const;

 private:
  Params params_;
  std::vector<Block> blocks_;
  std::vector<Mask> sorted_;
  std::string provenance_;
};

}  // namespace jcover

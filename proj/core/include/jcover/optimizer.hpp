#pragma once

// Shrinking covers with an exact per-subset coverage ledger.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "jcover/constructions.hpp"
#include "jcover/core.hpp"

#if defined(__BMI2__)
#include <immintrin.h>
#endif

namespace jcover {

namespace detail {

// Scatters the low bits of src into the set positions of selector.
inline Mask deposit_bits(Mask src, Mask selector) noexcept {
#if defined(__BMI2__)
  return _pdep_u64(src, selector);
#else
  Mask out = 0;
  for (; selector != 0 && src != 0; selector &= selector - 1, src >>= 1) {
    if (src & 1u) out |= selector & (~selector + 1);
  }
  return out;
#endif
}

// fn(index_mask) for every r-subset of {0, ..., m-1}, ascending. A bool
// returning fn stops the walk by returning false; the result reports whether
// the walk ran to completion.
template <typename Fn>
bool for_each_combination(int m, int r, Fn&& fn) {
  const auto visit = [&](Mask x) {
    if constexpr (std::is_same_v<std::invoke_result_t<Fn&, Mask>, bool>) {
      return fn(x);
    } else {
      fn(x);
      return true;
    }
  };
  if (r < 0 || r > m) return true;
  if (r == 0) return visit(Mask{0});
  Mask x = r == 64 ? ~Mask{0} : (Mask{1} << r) - 1;
  const Count count = kBinomial[m][r];
  for (Count i = 0;;) {
    if (!visit(x)) return false;
    if (++i == count) return true;
    x = next_combination(x);
  }
}

}  // namespace detail

// fn(mask) for every k-subset S of [n] with |S ∩ center| >= threshold. Builds
// S directly from i in-center and k - i out-of-center elements, so the cost is
// the ball size rather than C(n, k).
template <typename Fn>
bool for_each_in_ball(const Params& params, Block center, Fn&& fn) {
  constexpr bool stoppable =
      std::is_same_v<std::invoke_result_t<Fn&, Mask>, bool>;
  const Mask inside = center.mask;
  const Mask outside = params.ground_mask() & ~inside;
  const int k = params.k();
  const int rest = std::popcount(outside);
  for (int i = params.threshold(); i <= k; ++i) {
    const bool complete =
        detail::for_each_combination(k, i, [&](Mask in_index) {
          const Mask in = detail::deposit_bits(in_index, inside);
          return detail::for_each_combination(rest, k - i, [&](Mask out_index) {
            const Mask s = in | detail::deposit_bits(out_index, outside);
            if constexpr (stoppable) {
              return fn(s);
            } else {
              fn(s);
            }
          });
        });
    if (!complete) return false;
  }
  return true;
}

inline constexpr std::size_t kDefaultLedgerBudget = std::size_t{1} << 30;

struct LedgerOptions {
  int workers = 0;
  std::size_t memory_budget = kDefaultLedgerBudget;
};

// Bytes needed for one 16-bit counter per k-subset.
std::size_t ledger_bytes(const Params& params) noexcept;

// counts[rank(S)] = number of family blocks meeting S in >= threshold elements.
class CoverageLedger {
 public:
  using Counter = std::uint16_t;

  // All-zero ledger. Throws kOutOfMemoryBudget when ledger_bytes exceeds the
  // budget.
  explicit CoverageLedger(const Params& params,
                          std::size_t memory_budget = kDefaultLedgerBudget);

  const Params& params() const noexcept { return params_; }
  std::span<const Counter> counts() const noexcept { return counts_; }
  Counter at(Count rank) const noexcept { return counts_[rank]; }

  // Increment / decrement every subset in the ball around b.
  void add(Block b);
  void remove(Block b);
  // Smallest count inside the ball around b.
  Counter ball_min(Block b) const;
  // Every count inside the ball around b is >= floor. Stops at the first miss.
  bool ball_at_least(Block b, Counter floor) const;

  bool covers() const noexcept { return !first_uncovered().has_value(); }
  std::optional<Count> first_uncovered() const noexcept;
  Count covered_count() const noexcept;
  Count total() const noexcept;

  friend bool operator==(const CoverageLedger& a, const CoverageLedger& b) {
    return a.params_ == b.params_ && a.counts_ == b.counts_;
  }

 private:
  friend CoverageLedger build_ledger(const Family&, const LedgerOptions&);

  Params params_;
  std::vector<Counter> counts_;
};

// Scans every k-subset against every block (parallel over rank chunks).
// Throws kOutOfMemoryBudget, or kInvalidParams for families too large for
// 16-bit counters.
CoverageLedger build_ledger(const Family& family,
                            const LedgerOptions& options = {});

struct PruneOrder {
  enum class Kind { kIndex, kSeededRandom };
  Kind kind = Kind::kIndex;
  std::uint64_t seed = 0;
};

// Visits blocks in the given order and drops each one whose whole ball is
// still covered at least twice. Survivors keep their original relative order.
// Throws kNotACover (witness: lowest-rank uncovered subset).
Family prune_redundant(const Family& family, PruneOrder order = {},
                       const LedgerOptions& options = {});

// Lazy greedy: repeatedly takes the pool block covering the most uncovered
// subsets, ties to the lowest mask. Throws kPoolDoesNotCover.
Family greedy_cover(const Params& params, const Family& pool,
                    const LedgerOptions& options = {});

struct LocalSearchOptions {
  std::uint64_t budget = 0;  // iterations
  std::uint64_t seed = 0;
  // Pair partitions used for pair-union proposals. Empty: consecutive pairs
  // {1,2}, {3,4}, ... of [n] as a single part.
  std::vector<std::vector<Block>> pair_partitions;
  LedgerOptions ledger;
};

// Each iteration picks a random member. If its ball is covered twice it is
// dropped; otherwise it is swapped for a proposal (half pair-unions, half
// uniform k-subsets) when the swap keeps the family a cover. Deterministic
// per seed; never grows the family. Throws kNotACover if start does not cover.
Family local_search(const Family& start, const LocalSearchOptions& options);

}  // namespace jcover

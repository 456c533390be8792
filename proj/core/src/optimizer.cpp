#include "jcover/optimizer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <unordered_set>

#include "jcover/bounds.hpp"
#include "jcover/verifier.hpp"
#include "parallel.hpp"

namespace jcover {
namespace {

[[noreturn]] void throw_uncovered(Errc code, const Params& params, Count rank,
                                  const std::string& what) {
  const Block w{unrank(rank, params.k(), params.n())};
  throw Error(code, what + "; subset {" + w.to_string() + "} is uncovered",
              w.mask);
}

Family with_blocks(const Family& like, std::vector<Block> blocks,
                   const std::string& suffix) {
  return Family(like.params(), std::move(blocks), like.provenance() + suffix);
}

class CoveredSet {
 public:
  explicit CoveredSet(Count size) : words_((size + 63) / 64, 0), left_(size) {}

  bool test(Count rank) const noexcept {
    return (words_[rank >> 6] >> (rank & 63)) & 1u;
  }
  void set(Count rank) noexcept {
    Mask& w = words_[rank >> 6];
    const Mask bit = Mask{1} << (rank & 63);
    if ((w & bit) == 0) {
      w |= bit;
      --left_;
    }
  }
  Count left() const noexcept { return left_; }
  std::optional<Count> first_clear(Count size) const noexcept {
    for (Count r = 0; r < size; ++r) {
      if (!test(r)) return r;
    }
    return std::nullopt;
  }

 private:
  std::vector<Mask> words_;
  Count left_;
};

}  // namespace

std::size_t ledger_bytes(const Params& params) noexcept {
  return static_cast<std::size_t>(params.subset_count()) *
         sizeof(CoverageLedger::Counter);
}

CoverageLedger::CoverageLedger(const Params& params, std::size_t memory_budget)
    : params_(params) {
  const std::size_t bytes = ledger_bytes(params);
  if (bytes > memory_budget) {
    throw Error(Errc::kOutOfMemoryBudget,
                "coverage ledger needs " + std::to_string(bytes) +
                    " bytes, budget is " + std::to_string(memory_budget));
  }
  counts_.assign(static_cast<std::size_t>(params.subset_count()), 0);
}

void CoverageLedger::add(Block b) {
  for_each_in_ball(params_, b, [&](Mask s) {
    Counter& c = counts_[rank_of(s)];
    if (c == std::numeric_limits<Counter>::max()) {
      throw Error(Errc::kInvalidParams, "coverage counter overflow");
    }
    ++c;
  });
}

void CoverageLedger::remove(Block b) {
  for_each_in_ball(params_, b, [&](Mask s) { --counts_[rank_of(s)]; });
}

CoverageLedger::Counter CoverageLedger::ball_min(Block b) const {
  Counter lowest = std::numeric_limits<Counter>::max();
  for_each_in_ball(params_, b, [&](Mask s) {
    lowest = std::min(lowest, counts_[rank_of(s)]);
  });
  return lowest;
}

bool CoverageLedger::ball_at_least(Block b, Counter floor) const {
  return for_each_in_ball(params_, b,
                          [&](Mask s) { return counts_[rank_of(s)] >= floor; });
}

std::optional<Count> CoverageLedger::first_uncovered() const noexcept {
  const auto it = std::find(counts_.begin(), counts_.end(), Counter{0});
  if (it == counts_.end()) return std::nullopt;
  return static_cast<Count>(it - counts_.begin());
}

Count CoverageLedger::covered_count() const noexcept {
  return static_cast<Count>(
      std::count_if(counts_.begin(), counts_.end(),
                    [](Counter c) { return c != 0; }));
}

Count CoverageLedger::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), Count{0});
}

CoverageLedger build_ledger(const Family& family, const LedgerOptions& options) {
  const Params& params = family.params();
  if (family.size() > std::numeric_limits<CoverageLedger::Counter>::max()) {
    throw Error(Errc::kInvalidParams, "family too large for 16-bit counters");
  }
  CoverageLedger ledger(params, options.memory_budget);
  if (family.empty()) return ledger;
  const std::vector<Mask> blocks = family.masks();
  const int threshold = params.threshold();
  const auto chunks =
      split_ranks(RankRange{0, params.subset_count()}, kVerifyChunk);
  detail::parallel_for_index(
      chunks.size(), resolve_workers(options.workers), [&](std::size_t c) {
        for (SubsetCursor cur(params, chunks[c]); !cur.done(); cur.advance()) {
          const Mask s = cur.mask();
          unsigned hits = 0;
          for (Mask b : blocks) hits += std::popcount(s & b) >= threshold;
          ledger.counts_[cur.rank()] = static_cast<CoverageLedger::Counter>(hits);
        }
      });
  return ledger;
}

Family prune_redundant(const Family& family, PruneOrder order,
                       const LedgerOptions& options) {
  CoverageLedger ledger = build_ledger(family, options);
  if (const auto hole = ledger.first_uncovered()) {
    throw_uncovered(Errc::kNotACover, family.params(), *hole,
                    "family is not a cover");
  }
  std::vector<std::size_t> visit(family.size());
  std::iota(visit.begin(), visit.end(), std::size_t{0});
  std::string tag = " | pruned(index)";
  if (order.kind == PruneOrder::Kind::kSeededRandom) {
    std::mt19937_64 rng(order.seed);
    std::shuffle(visit.begin(), visit.end(), rng);
    tag = " | pruned(seed=" + std::to_string(order.seed) + ")";
  }
  std::vector<bool> keep(family.size(), true);
  const auto blocks = family.blocks();
  for (std::size_t i : visit) {
    if (ledger.ball_at_least(blocks[i], 2)) {
      ledger.remove(blocks[i]);
      keep[i] = false;
    }
  }
  std::vector<Block> kept;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (keep[i]) kept.push_back(blocks[i]);
  }
  return with_blocks(family, std::move(kept), tag);
}

Family greedy_cover(const Params& params, const Family& pool,
                    const LedgerOptions& options) {
  if (!(pool.params() == params)) {
    throw Error(Errc::kInvalidParams, "pool parameters differ");
  }
  const Count total = params.subset_count();
  if (ledger_bytes(params) / 16 > options.memory_budget) {
    throw Error(Errc::kOutOfMemoryBudget, "covered-set bitmap over budget");
  }
  CoveredSet covered(total);

  struct Candidate {
    Count gain;
    Mask mask;
  };
  // Heap top: largest gain, then smallest mask.
  const auto below = [](const Candidate& a, const Candidate& b) {
    return a.gain != b.gain ? a.gain < b.gain : a.mask > b.mask;
  };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(below)> heap(
      below);
  const Count ball = neighborhood_size(params);
  for (const Block& b : pool.blocks()) heap.push({ball, b.mask});

  std::vector<Block> chosen;
  while (covered.left() > 0) {
    if (heap.empty()) {
      throw_uncovered(Errc::kPoolDoesNotCover, params,
                      *covered.first_clear(total), "pool does not cover");
    }
    Candidate top = heap.top();
    heap.pop();
    Count gain = 0;
    for_each_in_ball(params, Block{top.mask},
                     [&](Mask s) { gain += !covered.test(rank_of(s)); });
    if (gain == 0) continue;
    top.gain = gain;
    // Stored gains only overestimate, so a fresh value that still ranks
    // first is the true maximum.
    if (!heap.empty() && below(top, heap.top())) {
      heap.push(top);
      continue;
    }
    for_each_in_ball(params, Block{top.mask},
                     [&](Mask s) { covered.set(rank_of(s)); });
    chosen.push_back(Block{top.mask});
  }
  return Family(params, std::move(chosen),
                "greedy(" + pool.provenance() + ")");
}

Family local_search(const Family& start, const LocalSearchOptions& options) {
  if (options.budget == 0) return start;
  const Params& params = start.params();
  CoverageLedger ledger = build_ledger(start, options.ledger);
  if (const auto hole = ledger.first_uncovered()) {
    throw_uncovered(Errc::kNotACover, params, *hole, "start is not a cover");
  }

  std::vector<std::vector<Block>> pair_parts = options.pair_partitions;
  if (pair_parts.empty()) {
    std::vector<Block> pairs;
    for (int e = 1; e + 1 <= params.n(); e += 2) {
      pairs.push_back(Block{Mask{3} << (e - 1)});
    }
    pair_parts.push_back(std::move(pairs));
  }
  std::vector<const std::vector<Block>*> usable;
  if (params.k() == 6) {
    for (const auto& part : pair_parts) {
      if (part.size() >= 3) usable.push_back(&part);
    }
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<Count> any_rank(0, params.subset_count() - 1);
  const auto uniform_below = [&](std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
  };
  const auto propose = [&]() -> Block {
    if (!usable.empty() && (rng() & 1u) == 0) {
      const auto& pairs = *usable[uniform_below(usable.size())];
      std::size_t i = uniform_below(pairs.size());
      std::size_t j = uniform_below(pairs.size() - 1);
      std::size_t k = uniform_below(pairs.size() - 2);
      // Map three draws onto three distinct indices.
      if (j >= i) ++j;
      const std::size_t lo = std::min(i, j);
      const std::size_t hi = std::max(i, j);
      if (k >= lo) ++k;
      if (k >= hi) ++k;
      return Block{pairs[i].mask | pairs[j].mask | pairs[k].mask};
    }
    return Block{unrank(any_rank(rng), params.k(), params.n())};
  };

  std::vector<Block> blocks(start.blocks().begin(), start.blocks().end());
  std::unordered_set<Mask> members;
  for (const Block& b : blocks) members.insert(b.mask);

  for (std::uint64_t step = 0; step < options.budget && !blocks.empty(); ++step) {
    const std::size_t idx = uniform_below(blocks.size());
    const Block current = blocks[idx];
    if (ledger.ball_at_least(current, 2)) {
      ledger.remove(current);
      members.erase(current.mask);
      blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(idx));
      continue;
    }
    const Block candidate = propose();
    if (members.contains(candidate.mask)) continue;
    ledger.add(candidate);
    ledger.remove(current);
    // Only subsets in the removed ball can have dropped to zero.
    if (ledger.ball_at_least(current, 1)) {
      members.erase(current.mask);
      members.insert(candidate.mask);
      blocks[idx] = candidate;
    } else {
      ledger.add(current);
      ledger.remove(candidate);
    }
  }
  return with_blocks(start, std::move(blocks),
                     " | local-search(seed=" + std::to_string(options.seed) +
                         ", budget=" + std::to_string(options.budget) + ")");
}

}  // namespace jcover

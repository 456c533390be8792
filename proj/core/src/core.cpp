#include "jcover/core.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace jcover {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidParams: return "InvalidParams";
    case Errc::kDuplicateElement: return "DuplicateElement";
    case Errc::kOutOfRange: return "OutOfRange";
    case Errc::kWrongCardinality: return "WrongCardinality";
    case Errc::kRangeOutOfBounds: return "RangeOutOfBounds";
    case Errc::kInvalidBlock: return "InvalidBlock";
    case Errc::kDuplicateBlock: return "DuplicateBlock";
    case Errc::kTooFewPairs: return "TooFewPairs";
    case Errc::kOverlappingPairs: return "OverlappingPairs";
    case Errc::kInvalidM: return "InvalidM";
    case Errc::kSchemeNotBipartite: return "SchemeNotBipartite";
    case Errc::kEmptyFamily: return "EmptyFamily";
    case Errc::kConstructionFailure: return "ConstructionFailure";
    case Errc::kOutOfMemoryBudget: return "OutOfMemoryBudget";
    case Errc::kNotACover: return "NotACover";
    case Errc::kPoolDoesNotCover: return "PoolDoesNotCover";
    case Errc::kParse: return "Parse";
  }
  return "Unknown";
}

Count binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) is divisible by i at every step.
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (result > std::numeric_limits<Count>::max()) {
      throw Error(Errc::kOutOfRange, "binomial coefficient exceeds 64 bits");
    }
  }
  return static_cast<Count>(result);
}

Params Params::make(int n, int k, int radius) {
  if (n < 1 || n > kMaxGroundSet) {
    throw Error(Errc::kInvalidParams,
                "ground set size must be in 1..64, got " + std::to_string(n));
  }
  if (k < 1 || k > n) {
    throw Error(Errc::kInvalidParams,
                "subset size must be in 1..n, got " + std::to_string(k));
  }
  if (radius < 0 || radius > k) {
    throw Error(Errc::kInvalidParams,
                "radius must be in 0..k, got " + std::to_string(radius));
  }
  return Params(n, k, radius);
}

std::vector<int> Block::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (Mask m = mask; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m) + 1);
  }
  return out;
}

std::string Block::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int e : elements()) {
    if (!first) os << ' ';
    os << e;
    first = false;
  }
  return os.str();
}

bool is_valid_block(Mask mask, const Params& params) noexcept {
  return (mask & ~params.ground_mask()) == 0 &&
         std::popcount(mask) == params.k();
}

Block block_from_elements(std::span<const int> elements, const Params& params) {
  if (static_cast<int>(elements.size()) != params.k()) {
    throw Error(Errc::kWrongCardinality,
                "expected " + std::to_string(params.k()) + " elements, got " +
                    std::to_string(elements.size()));
  }
  Mask mask = 0;
  for (int e : elements) {
    if (e < 1 || e > params.n()) {
      throw Error(Errc::kOutOfRange, "element " + std::to_string(e) +
                                         " outside 1.." +
                                         std::to_string(params.n()));
    }
    const Mask bit = Mask{1} << (e - 1);
    if ((mask & bit) != 0) {
      throw Error(Errc::kDuplicateElement,
                  "element " + std::to_string(e) + " repeated");
    }
    mask |= bit;
  }
  return Block{mask};
}

Mask unrank(Count rank, int k, int n) {
  Mask mask = 0;
  int c = n - 1;
  for (int j = k; j >= 1; --j) {
    while (detail::kBinomial[c][j] > rank) --c;
    mask |= Mask{1} << c;
    rank -= detail::kBinomial[c][j];
    --c;
  }
  return mask;
}

SubsetCursor::SubsetCursor(const Params& params, RankRange range)
    : rank_(range.begin), end_(range.end) {
  if (rank_ < end_) mask_ = unrank(rank_, params.k(), params.n());
}

KSubsets enumerate_k_subsets(const Params& params,
                             std::optional<RankRange> range) {
  const Count total = params.subset_count();
  const RankRange r = range.value_or(RankRange{0, total});
  if (r.begin > r.end || r.end > total) {
    throw Error(Errc::kRangeOutOfBounds,
                "rank range [" + std::to_string(r.begin) + ", " +
                    std::to_string(r.end) + ") not within [0, " +
                    std::to_string(total) + ")");
  }
  return KSubsets(params, r);
}

std::vector<RankRange> split_ranks(RankRange whole, Count chunk) {
  std::vector<RankRange> out;
  if (chunk == 0) chunk = 1;
  for (Count b = whole.begin; b < whole.end;) {
    const Count e = whole.end - b > chunk ? b + chunk : whole.end;
    out.push_back({b, e});
    b = e;
  }
  return out;
}

Family::Family(const Params& params, std::vector<Block> blocks,
               std::string provenance)
    : params_(params),
      blocks_(std::move(blocks)),
      provenance_(std::move(provenance)) {
  sorted_.reserve(blocks_.size());
  for (const Block& b : blocks_) {
    if (!is_valid_block(b.mask, params_)) {
      throw Error(Errc::kInvalidBlock,
                  "block {" + b.to_string() + "} is not a " +
                      std::to_string(params_.k()) + "-subset of [" +
                      std::to_string(params_.n()) + "]");
    }
    sorted_.push_back(b.mask);
  }
  std::sort(sorted_.begin(), sorted_.end());
  const auto dup = std::adjacent_find(sorted_.begin(), sorted_.end());
  if (dup != sorted_.end()) {
    throw Error(Errc::kDuplicateBlock,
                "block {" + Block{*dup}.to_string() + "} listed twice");
  }
}

bool Family::contains(Block b) const noexcept {
  return std::binary_search(sorted_.begin(), sorted_.end(), b.mask);
}

std::vector<Mask> Family::masks() const {
  std::vector<Mask> out;
  out.reserve(blocks_.size());
  for (const Block& b : blocks_) out.push_back(b.mask);
  return out;
}

}  // namespace jcover

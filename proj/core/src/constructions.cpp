#include "jcover/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace jcover {
namespace {

Mask range_mask(int first, int last) {  // elements first..last, 1-indexed
  Mask m = 0;
  for (int e = first; e <= last; ++e) m |= Mask{1} << (e - 1);
  return m;
}

std::vector<Block> consecutive_pairs(int first, int last) {
  std::vector<Block> pairs;
  for (int e = first; e + 1 <= last; e += 2) {
    pairs.push_back(Block{range_mask(e, e + 1)});
  }
  return pairs;
}

void append_all(std::vector<Block>& out, const std::vector<Block>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

std::vector<Block> pairs_of_base_blocks(std::initializer_list<int> indices) {
  std::vector<Block> pairs;
  for (int i : indices) append_all(pairs, consecutive_pairs(6 * (i - 1) + 1, 6 * i));
  return pairs;
}

void compositions_rec(int remaining, int slot, std::vector<int>& current,
                      std::vector<std::vector<int>>& out) {
  if (slot + 1 == static_cast<int>(current.size())) {
    current[slot] = remaining;
    out.push_back(current);
    return;
  }
  for (int x = 0; x <= remaining; ++x) {
    current[slot] = x;
    compositions_rec(remaining - x, slot + 1, current, out);
  }
}

}  // namespace

std::vector<int> PartitionScheme::part_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(parts.size());
  for (Mask p : parts) sizes.push_back(std::popcount(p));
  return sizes;
}

void PartitionScheme::validate() const {
  const auto fail = [](const std::string& why) {
    throw Error(Errc::kInvalidParams, "partition scheme: " + why);
  };
  if (parts.empty() || pair_partitions.size() != parts.size()) {
    fail("every part needs a pair partition");
  }
  Mask seen = 0;
  for (std::size_t t = 0; t < parts.size(); ++t) {
    if ((seen & parts[t]) != 0) fail("parts overlap");
    seen |= parts[t];
    Mask covered = 0;
    for (const Block& p : pair_partitions[t]) {
      if (p.size() != 2 || (covered & p.mask) != 0) fail("pairs overlap");
      covered |= p.mask;
    }
    if (covered != parts[t]) fail("pairs do not partition their part");
  }
  if (seen != params.ground_mask()) fail("parts do not cover the ground set");
  if (!base_blocks.empty()) {
    Mask base = 0;
    for (const Block& b : base_blocks) {
      if (b.size() != 6 || (base & b.mask) != 0) fail("base blocks overlap");
      base |= b.mask;
    }
    if (base != params.ground_mask()) fail("base blocks do not cover");
    if (std::accumulate(group_sizes.begin(), group_sizes.end(), 0) !=
        static_cast<int>(base_blocks.size())) {
      fail("group sizes do not sum to the base block count");
    }
  }
}

PartitionScheme scheme_from_groups(std::span<const int> group_sizes) {
  const int base_count =
      std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
  for (int g : group_sizes) {
    if (g < 1) throw Error(Errc::kInvalidParams, "group sizes must be positive");
  }
  if (base_count < 1 || 6 * base_count > kMaxGroundSet) {
    throw Error(Errc::kInvalidParams, "base blocks must fit in 64 elements");
  }
  PartitionScheme scheme;
  scheme.params = Params::make(6 * base_count, 6, 3);
  for (int i = 1; i <= base_count; ++i) {
    scheme.base_blocks.push_back(Block{range_mask(6 * (i - 1) + 1, 6 * i)});
  }
  scheme.group_sizes.assign(group_sizes.begin(), group_sizes.end());
  int next = 1;
  for (int g : group_sizes) {
    const int first = 6 * (next - 1) + 1;
    const int last = 6 * (next + g - 1);
    scheme.parts.push_back(range_mask(first, last));
    scheme.pair_partitions.push_back(consecutive_pairs(first, last));
    next += g;
  }
  return scheme;
}

PartitionScheme scheme_two_halves() {
  constexpr int groups[] = {5, 5};
  return scheme_from_groups(groups);
}

PartitionScheme scheme_grouped_334() {
  constexpr int groups[] = {3, 3, 4};
  return scheme_from_groups(groups);
}

PartitionScheme scheme_generalized(int m) {
  if (m % 2 != 0 || m < 6 || 2 * m > kMaxGroundSet) {
    throw Error(Errc::kInvalidM,
                "m must be even with 6 <= m <= 32, got " + std::to_string(m));
  }
  if (m % 6 == 0) {
    const int groups[] = {m / 6, m / 6};
    return scheme_from_groups(groups);
  }
  PartitionScheme scheme;
  scheme.params = Params::make(2 * m, 6, 3);
  scheme.parts = {range_mask(1, m), range_mask(m + 1, 2 * m)};
  scheme.pair_partitions = {consecutive_pairs(1, m),
                            consecutive_pairs(m + 1, 2 * m)};
  return scheme;
}

std::vector<Block> recombine_triples(std::span<const Block> pairs) {
  if (pairs.size() < 3) {
    throw Error(Errc::kTooFewPairs, "need at least 3 pairs, got " +
                                        std::to_string(pairs.size()));
  }
  Mask seen = 0;
  for (const Block& p : pairs) {
    if (p.size() != 2 || (seen & p.mask) != 0) {
      throw Error(Errc::kOverlappingPairs,
                  "pair {" + p.to_string() + "} is not a disjoint 2-set");
    }
    seen |= p.mask;
  }
  std::vector<Block> blocks;
  const std::size_t count = pairs.size();
  blocks.reserve(binomial(static_cast<int>(count), 3));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      for (std::size_t k = j + 1; k < count; ++k) {
        blocks.push_back(Block{pairs[i].mask | pairs[j].mask | pairs[k].mask});
      }
    }
  }
  return blocks;
}

Family family_from_scheme(const PartitionScheme& scheme,
                          const std::string& provenance) {
  std::vector<Block> blocks;
  for (const auto& pairs : scheme.pair_partitions) {
    append_all(blocks, recombine_triples(pairs));
  }
  return Family(scheme.params, std::move(blocks), provenance);
}

Family family_910() {
  return family_from_scheme(scheme_two_halves(), "two-halves-910");
}

Family family_generalized(int m) {
  return family_from_scheme(scheme_generalized(m),
                            "generalized-2m(" + std::to_string(m) + ")");
}

Family family_388() {
  return family_from_scheme(scheme_grouped_334(), "grouped-334-388");
}

std::vector<Block> pool_828_a() {
  return recombine_triples(pairs_of_base_blocks({4, 7, 8, 9}));
}

std::vector<Block> pool_828_b() {
  return recombine_triples(pairs_of_base_blocks({5, 7, 8, 10}));
}

Family family_828() {
  const Family base = family_388();
  std::vector<Block> blocks(base.blocks().begin(), base.blocks().end());
  std::vector<Mask> present = base.masks();
  std::sort(present.begin(), present.end());
  std::size_t dropped = 0;
  for (const auto& pool : {pool_828_a(), pool_828_b()}) {
    for (const Block& b : pool) {
      const auto it = std::lower_bound(present.begin(), present.end(), b.mask);
      if (it != present.end() && *it == b.mask) {
        ++dropped;
        continue;
      }
      present.insert(it, b.mask);
      blocks.push_back(b);
    }
  }
  return Family(base.params(), std::move(blocks),
                "grouped-334-828: 388 + pool(G4,G7,G8,G9) + pool(G5,G7,G8,G10), "
                "2x220 pool blocks, " +
                    std::to_string(dropped) + " already present dropped");
}

CoverFinder::CoverFinder(const PartitionScheme& scheme) : pair_of_{} {
  if (scheme.part_count() != 2) {
    throw Error(Errc::kSchemeNotBipartite,
                "constructive cover needs exactly 2 parts, got " +
                    std::to_string(scheme.part_count()));
  }
  if (scheme.params.k() != 6 || scheme.params.threshold() != 3) {
    throw Error(Errc::kSchemeNotBipartite,
                "constructive cover needs k = 6 and threshold = 3");
  }
  for (int t = 0; t < 2; ++t) {
    if (scheme.pair_partitions[t].size() < 3) {
      throw Error(Errc::kSchemeNotBipartite,
                  "each part needs at least 3 pairs");
    }
    parts_[t] = scheme.parts[t];
    const auto& pairs = scheme.pair_partitions[t];
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      pairs_[t].push_back(pairs[i].mask);
      for (Mask m = pairs[i].mask; m != 0; m &= m - 1) {
        pair_of_[std::countr_zero(m)] = static_cast<int>(i);
      }
    }
  }
}

CoveringChoice CoverFinder::find(Block s) const noexcept {
  const int in_first = std::popcount(s.mask & parts_[0]);
  const int in_second = std::popcount(s.mask & parts_[1]);
  const int t = in_second > in_first ? 1 : 0;
  Mask rest = s.mask & parts_[t];
  if (std::popcount(rest) < 3) return {Block{0}, t};
  const auto& pairs = pairs_[t];
  // First three distinct pairs met in ascending element order; these hold the
  // three smallest elements of s in this part.
  Mask block = 0;
  while (rest != 0 && std::popcount(block) < 6) {
    const Mask p = pairs[pair_of_[std::countr_zero(rest)]];
    block |= p;
    rest &= ~p;
  }
  if (std::popcount(block) == 4) {
    for (Mask p : pairs) {
      if ((p & block) == 0) {
        block |= p;
        break;
      }
    }
  }
  return {Block{block}, t};
}

CoveringChoice find_covering_block(Block s, const PartitionScheme& scheme) {
  return CoverFinder(scheme).find(s);
}

std::vector<CompositionProfile> enumerate_compositions(int k, int parts,
                                                       int threshold) {
  if (k < 0 || parts < 1) {
    throw Error(Errc::kInvalidParams, "compositions need k >= 0, parts >= 1");
  }
  std::vector<std::vector<int>> tuples;
  std::vector<int> current(static_cast<std::size_t>(parts), 0);
  compositions_rec(k, 0, current, tuples);
  std::vector<CompositionProfile> out;
  out.reserve(tuples.size());
  for (auto& counts : tuples) {
    const bool guaranteed =
        *std::max_element(counts.begin(), counts.end()) >= threshold;
    out.push_back({std::move(counts), std::nullopt, guaranteed});
  }
  return out;
}

std::vector<CompositionProfile> enumerate_compositions(
    int k, std::span<const int> part_sizes, int threshold) {
  auto out =
      enumerate_compositions(k, static_cast<int>(part_sizes.size()), threshold);
  for (auto& profile : out) {
    Count product = 1;
    for (std::size_t t = 0; t < part_sizes.size(); ++t) {
      product *= binomial(part_sizes[t], profile.counts[t]);
    }
    profile.subset_count = product;
  }
  return out;
}

std::vector<int> composition_of(Block s, const PartitionScheme& scheme) {
  std::vector<int> counts;
  counts.reserve(scheme.parts.size());
  for (Mask p : scheme.parts) counts.push_back(std::popcount(s.mask & p));
  return counts;
}

Mask Relabeling::apply(Mask mask) const noexcept {
  Mask out = 0;
  for (; mask != 0; mask &= mask - 1) {
    out |= Mask{1} << (image[std::countr_zero(mask)] - 1);
  }
  return out;
}

bool Relabeling::is_identity() const noexcept {
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

std::string Relabeling::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (i != 0) os << ' ';
    os << image[i];
  }
  return os.str();
}

Relabeling identity_relabeling(int n) {
  Relabeling r;
  r.image.resize(static_cast<std::size_t>(n));
  std::iota(r.image.begin(), r.image.end(), 1);
  return r;
}

Relabeling seeded_relabeling(int n, std::uint64_t seed) {
  Relabeling r = identity_relabeling(n);
  std::mt19937_64 rng(seed);
  std::shuffle(r.image.begin(), r.image.end(), rng);
  return r;
}

Relabeling parse_relabeling(const std::string& text, int n) {
  std::istringstream is(text);
  Relabeling r;
  int value = 0;
  while (is >> value) r.image.push_back(value);
  if (!is.eof()) throw Error(Errc::kParse, "relabeling: non-integer token");
  std::vector<int> sorted = r.image;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != identity_relabeling(n).image) {
    throw Error(Errc::kParse,
                "relabeling is not a permutation of 1.." + std::to_string(n));
  }
  return r;
}

Family relabel(const Family& family, const Relabeling& relabeling) {
  std::vector<Block> blocks;
  blocks.reserve(family.size());
  for (const Block& b : family.blocks()) blocks.push_back(relabeling.apply(b));
  return Family(family.params(), std::move(blocks), family.provenance());
}

PartitionScheme relabel(const PartitionScheme& scheme,
                        const Relabeling& relabeling) {
  PartitionScheme out = scheme;
  for (Block& b : out.base_blocks) b = relabeling.apply(b);
  for (Mask& p : out.parts) p = relabeling.apply(p);
  for (auto& pairs : out.pair_partitions) {
    for (Block& p : pairs) p = relabeling.apply(p);
  }
  return out;
}

}  // namespace jcover

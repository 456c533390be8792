#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "jcover/constructions.hpp"
#include "oracles.hpp"

namespace jcover {
namespace {

Block from(std::initializer_list<int> elements, const Params& p = Params::standard()) {
  const std::vector<int> v(elements);
  return block_from_elements(v, p);
}

Block pair(int a, int b) { return Block{(Mask{1} << (a - 1)) | (Mask{1} << (b - 1))}; }

TEST(SchemeTwoHalves, PairsAndParts) {
  const PartitionScheme s = scheme_two_halves();
  EXPECT_NO_THROW(s.validate());
  ASSERT_EQ(s.part_count(), 2u);
  EXPECT_EQ(s.group_sizes, (std::vector<int>{5, 5}));
  ASSERT_EQ(s.pair_partitions[0].size(), 15u);
  ASSERT_EQ(s.pair_partitions[1].size(), 15u);
  EXPECT_EQ(s.pair_partitions[0].front(), pair(1, 2));
  EXPECT_EQ(s.pair_partitions[0].back(), pair(29, 30));
  EXPECT_EQ(s.pair_partitions[1].front(), pair(31, 32));
  EXPECT_EQ(s.pair_partitions[1].back(), pair(59, 60));
  EXPECT_EQ(s.parts[0] & s.parts[1], 0u);
  EXPECT_EQ(s.parts[0] | s.parts[1], s.params.ground_mask());
  ASSERT_EQ(s.base_blocks.size(), 10u);
  for (int i = 1; i <= 10; ++i) {
    EXPECT_EQ(s.base_blocks[i - 1].to_string(),
              from({6 * i - 5, 6 * i - 4, 6 * i - 3, 6 * i - 2, 6 * i - 1, 6 * i}).to_string());
  }
}

TEST(SchemeGrouped334, PartsAndPairs) {
  const PartitionScheme s = scheme_grouped_334();
  EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(s.part_sizes(), (std::vector<int>{18, 18, 24}));
  EXPECT_EQ(s.pair_partitions[0].size(), 9u);
  EXPECT_EQ(s.pair_partitions[1].size(), 9u);
  EXPECT_EQ(s.pair_partitions[2].size(), 12u);
  EXPECT_EQ(s.parts[0] | s.parts[1] | s.parts[2], s.params.ground_mask());
  EXPECT_EQ(s.parts[0] & s.parts[1], 0u);
  EXPECT_EQ((s.parts[0] | s.parts[1]) & s.parts[2], 0u);
}

TEST(SchemeValidate, DetectsBrokenPartitions) {
  PartitionScheme s = scheme_two_halves();
  s.pair_partitions[0].pop_back();
  EXPECT_THROW(s.validate(), Error);
  s = scheme_two_halves();
  s.parts[1] |= 1;
  EXPECT_THROW(s.validate(), Error);
}

TEST(RecombineTriples, Counts) {
  const PartitionScheme s = scheme_two_halves();
  EXPECT_EQ(recombine_triples(s.pair_partitions[0]).size(), 455u);
  const std::vector<Block> three = {pair(1, 2), pair(3, 4), pair(5, 6)};
  const auto one = recombine_triples(three);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].mask, Mask{0x3f});
  const auto g334 = scheme_grouped_334();
  EXPECT_EQ(recombine_triples(g334.pair_partitions[2]).size(), oracle::choose(12, 3));
  EXPECT_EQ(recombine_triples(g334.pair_partitions[2]).size(), 220u);
}

TEST(RecombineTriples, OrderDistinctnessAndErrors) {
  const auto blocks = recombine_triples(scheme_two_halves().pair_partitions[1]);
  EXPECT_EQ(blocks[0].to_string(), "31 32 33 34 35 36");
  EXPECT_EQ(blocks[1].to_string(), "31 32 33 34 37 38");
  std::set<Mask> distinct;
  for (const Block& b : blocks) {
    EXPECT_EQ(b.size(), 6);
    distinct.insert(b.mask);
  }
  EXPECT_EQ(distinct.size(), blocks.size());

  const std::vector<Block> two = {pair(1, 2), pair(3, 4)};
  try {
    recombine_triples(two);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kTooFewPairs);
  }
  const std::vector<Block> overlap = {pair(1, 2), pair(2, 3), pair(5, 6)};
  try {
    recombine_triples(overlap);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kOverlappingPairs);
  }
}

TEST(Family910, ShapeAndMembership) {
  const Family f = family_910();
  ASSERT_EQ(f.size(), 910u);
  EXPECT_EQ(f.provenance(), "two-halves-910");
  const Mask low = (Mask{1} << 30) - 1;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Block b = f.blocks()[i];
    ASSERT_EQ(b.size(), 6);
    if (i < 455) {
      ASSERT_EQ(b.mask & ~low, 0u);
    } else {
      ASSERT_EQ(b.mask & low, 0u);
    }
  }
  EXPECT_TRUE(f.contains(from({1, 2, 7, 8, 9, 10})));
}

TEST(FamilyGeneralized, SizesAndIdentityWith910) {
  const Family f30 = family_generalized(30);
  const Family f910 = family_910();
  ASSERT_EQ(f30.size(), f910.size());
  EXPECT_TRUE(std::equal(f30.blocks().begin(), f30.blocks().end(),
                         f910.blocks().begin()));

  const Family f6 = family_generalized(6);
  ASSERT_EQ(f6.size(), 2u);
  EXPECT_EQ(f6.params().n(), 12);
  EXPECT_EQ(f6.blocks()[0].to_string(), "1 2 3 4 5 6");
  EXPECT_EQ(f6.blocks()[1].to_string(), "7 8 9 10 11 12");

  const Family f8 = family_generalized(8);
  EXPECT_EQ(f8.params().n(), 16);
  EXPECT_EQ(f8.size(), 2 * oracle::choose(4, 3));
  EXPECT_EQ(f8.size(), 8u);
  EXPECT_TRUE(scheme_generalized(8).base_blocks.empty());

  for (int m = 6; m <= 32; m += 2) {
    EXPECT_EQ(family_generalized(m).size(), 2 * oracle::choose(m / 2, 3)) << m;
  }
  for (int bad : {5, 7, 4, 0, 34, -6}) {
    try {
      family_generalized(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kInvalidM);
    }
  }
}

TEST(Family388, GroupContributions) {
  const Family f = family_388();
  ASSERT_EQ(f.size(), 388u);
  EXPECT_EQ(oracle::choose(9, 3) * 2 + oracle::choose(12, 3), 388u);
  const PartitionScheme s = scheme_grouped_334();
  std::vector<int> per_part(3, 0);
  for (const Block& b : f.blocks()) {
    int owners = 0;
    for (int t = 0; t < 3; ++t) {
      if ((b.mask & ~s.parts[t]) == 0) {
        ++per_part[t];
        ++owners;
      }
    }
    ASSERT_EQ(owners, 1);
  }
  EXPECT_EQ(per_part, (std::vector<int>{84, 84, 220}));
}

TEST(Family828, PoolsAndDeduplication) {
  const auto a = pool_828_a();
  const auto b = pool_828_b();
  ASSERT_EQ(a.size(), 220u);
  ASSERT_EQ(b.size(), 220u);
  // G_4 ∪ G_7 ∪ G_8 ∪ G_9 and G_5 ∪ G_7 ∪ G_8 ∪ G_10.
  Mask region_a = 0;
  Mask region_b = 0;
  const auto base = scheme_two_halves().base_blocks;
  for (int i : {4, 7, 8, 9}) region_a |= base[i - 1].mask;
  for (int i : {5, 7, 8, 10}) region_b |= base[i - 1].mask;
  for (const Block& x : a) ASSERT_EQ(x.mask & ~region_a, 0u);
  for (const Block& x : b) ASSERT_EQ(x.mask & ~region_b, 0u);

  // Independent count of distinct blocks in 388 ∪ pool A ∪ pool B.
  const Family f388 = family_388();
  std::set<Mask> all;
  for (const Block& x : f388.blocks()) all.insert(x.mask);
  for (const Block& x : a) all.insert(x.mask);
  for (const Block& x : b) all.insert(x.mask);
  const Family f = family_828();
  EXPECT_EQ(f.size(), all.size());
  EXPECT_EQ(f.size(), 658u);
  EXPECT_NE(f.provenance().find("2x220"), std::string::npos);
  EXPECT_NE(f.provenance().find("170 already present"), std::string::npos);
  EXPECT_TRUE(std::equal(f388.blocks().begin(), f388.blocks().end(), f.blocks().begin()));
}

TEST(FindCoveringBlock, WorkedExamples) {
  const PartitionScheme s = scheme_two_halves();
  const auto c1 = find_covering_block(from({1, 2, 7, 9, 31, 45}), s);
  EXPECT_EQ(c1.block.to_string(), "1 2 7 8 9 10");
  EXPECT_EQ(c1.part, 0);

  const auto c2 = find_covering_block(from({1, 2, 3, 4, 5, 6}), s);
  EXPECT_EQ(c2.block.to_string(), "1 2 3 4 5 6");
  EXPECT_GE(intersection_size(c2.block, from({1, 2, 3, 4, 5, 6})), 3);

  const Block s3 = from({31, 32, 33, 34, 35, 36});
  const auto c3 = find_covering_block(s3, s);
  EXPECT_EQ(c3.part, 1);
  EXPECT_EQ(c3.block.mask & s3.mask & 0x7ull << 30, 0x7ull << 30);
  EXPECT_TRUE(family_910().contains(c3.block));

  // Tie (3, 3) goes to the first part.
  const auto c4 = find_covering_block(from({1, 3, 5, 31, 33, 35}), s);
  EXPECT_EQ(c4.part, 0);
  EXPECT_EQ(c4.block.to_string(), "1 2 3 4 5 6");
}

TEST(FindCoveringBlock, RequiresBipartiteScheme) {
  try {
    find_covering_block(from({1, 2, 3, 4, 5, 6}), scheme_grouped_334());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSchemeNotBipartite);
  }
}

TEST(FindCoveringBlock, RandomSubsetsAlwaysCoveredByAMember) {
  const PartitionScheme s = scheme_two_halves();
  const CoverFinder finder(s);
  const Family f = family_910();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<Count> pick(0, s.params.subset_count() - 1);
  for (int i = 0; i < 1'000'000; ++i) {
    const Block subset{unrank(pick(rng), 6, 60)};
    const CoveringChoice c = finder.find(subset);
    ASSERT_GE(intersection_size(subset, c.block), 3) << subset.to_string();
    ASSERT_TRUE(f.contains(c.block)) << subset.to_string();
  }
}

TEST(Compositions, ThreePartsListing) {
  const auto profiles = enumerate_compositions(6, 3);
  ASSERT_EQ(profiles.size(), 28u);
  EXPECT_EQ(profiles.front().counts, (std::vector<int>{0, 0, 6}));
  EXPECT_EQ(profiles[1].counts, (std::vector<int>{0, 1, 5}));
  EXPECT_EQ(profiles[7].counts, (std::vector<int>{1, 0, 5}));
  EXPECT_EQ(profiles.back().counts, (std::vector<int>{6, 0, 0}));
  int not_guaranteed = 0;
  for (const auto& p : profiles) {
    EXPECT_EQ(std::accumulate(p.counts.begin(), p.counts.end(), 0), 6);
    if (!p.guaranteed) {
      ++not_guaranteed;
      EXPECT_EQ(p.counts, (std::vector<int>{2, 2, 2}));
    }
  }
  EXPECT_EQ(not_guaranteed, 1);
  EXPECT_EQ(profiles[15].counts, (std::vector<int>{2, 2, 2}));
}

TEST(Compositions, TwoPartsAllGuaranteed) {
  const auto profiles = enumerate_compositions(6, 2);
  ASSERT_EQ(profiles.size(), 7u);
  for (int x = 0; x <= 6; ++x) {
    EXPECT_EQ(profiles[x].counts, (std::vector<int>{x, 6 - x}));
    EXPECT_TRUE(profiles[x].guaranteed);
  }
}

TEST(Compositions, SubsetCountsSumToTotal) {
  for (const PartitionScheme& s : {scheme_two_halves(), scheme_grouped_334()}) {
    const auto sizes = s.part_sizes();
    Count total = 0;
    for (const auto& p : enumerate_compositions(6, sizes)) total += *p.subset_count;
    EXPECT_EQ(total, 50063860u);
  }
  const std::vector<int> sizes = {18, 18, 24};
  for (const auto& p : enumerate_compositions(6, sizes)) {
    if (p.counts == std::vector<int>{2, 2, 2}) {
      EXPECT_EQ(*p.subset_count, Count{153} * 153 * 276);
      EXPECT_EQ(*p.subset_count, 6460884u);
    }
  }
  EXPECT_EQ(enumerate_compositions(0, 3).size(), 1u);
}

TEST(Compositions, GroupedBlocksMeetBalancedSubsetsInAtMostTwo) {
  const PartitionScheme s = scheme_grouped_334();
  const Family f = family_388();
  std::mt19937_64 rng(5);
  const auto draw_two = [&](Mask part) {
    std::vector<int> elements = Block{part}.elements();
    std::shuffle(elements.begin(), elements.end(), rng);
    return (Mask{1} << (elements[0] - 1)) | (Mask{1} << (elements[1] - 1));
  };
  for (int i = 0; i < 2000; ++i) {
    const Block subset{draw_two(s.parts[0]) | draw_two(s.parts[1]) | draw_two(s.parts[2])};
    ASSERT_EQ(composition_of(subset, s), (std::vector<int>{2, 2, 2}));
    for (const Block& b : f.blocks()) ASSERT_LE(intersection_size(subset, b), 2);
  }
}

TEST(Relabeling, SeededIsAPermutationAndPreservesStructure) {
  const Relabeling r = seeded_relabeling(60, 42);
  EXPECT_FALSE(r.is_identity());
  EXPECT_EQ(parse_relabeling(r.to_string(), 60).image, r.image);
  EXPECT_EQ(seeded_relabeling(60, 42).image, r.image);
  EXPECT_THROW(parse_relabeling("1 2 2", 3), Error);
  EXPECT_THROW(parse_relabeling("1 2 x", 3), Error);

  const Family moved = relabel(family_910(), r);
  const PartitionScheme scheme = relabel(scheme_two_halves(), r);
  EXPECT_NO_THROW(scheme.validate());
  const CoverFinder finder(scheme);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<Count> pick(0, 50063859);
  for (int i = 0; i < 100000; ++i) {
    const Block subset{unrank(pick(rng), 6, 60)};
    const auto c = finder.find(subset);
    ASSERT_TRUE(moved.contains(c.block));
    ASSERT_GE(intersection_size(c.block, subset), 3);
  }
}

}  // namespace
}  // namespace jcover

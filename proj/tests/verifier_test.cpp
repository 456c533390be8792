#include <gtest/gtest.h>

#include <random>

#include "jcover/verifier.hpp"
#include "oracles.hpp"

namespace jcover {
namespace {

std::vector<oracle::Subset> as_subsets(const Family& f) {
  std::vector<oracle::Subset> out;
  for (const Block& b : f.blocks()) out.push_back(b.elements());
  return out;
}

Family random_family(const Params& p, std::size_t size, std::uint64_t seed) {
  std::vector<Block> blocks = random_subsets(p, size * 2, seed);
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
  if (blocks.size() > size) blocks.resize(size);
  return Family(p, blocks, "random");
}

VerifyOptions workers(int w) {
  VerifyOptions o;
  o.workers = w;
  return o;
}

TEST(MaxIntersection, EarlyExitAndExact) {
  const std::vector<Mask> blocks = {0x3f, 0xfc0, 0x3f000};
  EXPECT_EQ(max_intersection(0x3f, blocks, 6), 6);
  EXPECT_EQ(max_intersection(0x7, blocks, 6), 3);
  EXPECT_EQ(max_intersection(0x1c7, blocks, 6), 3);
  EXPECT_GE(max_intersection(0x3f, blocks, 3), 3);
  EXPECT_EQ(max_intersection(Mask{1} << 40, blocks, 6), 0);
  std::vector<Mask> many(37, Mask{0x3f} << 50);
  many[33] = 0x3f;
  EXPECT_EQ(max_intersection(0x3f, many, 6), 6);
}

TEST(VerifyExhaustive, FullSpacesMatchOracleUpToSixteen) {
  for (int n = 6; n <= 16; ++n) {
    const Params p = Params::make(n, 6, 3);
    const std::size_t size = n <= 8 ? 1 : static_cast<std::size_t>(n / 2);
    const Family f = random_family(p, size, 100 + n);
    const auto expected = oracle::histogram(n, 6, as_subsets(f));
    const CoverageReport fast = verify_exhaustive(f, workers(1));
    const CoverageReport ref = verify_reference(f, RankRange{0, p.subset_count()});
    ASSERT_TRUE(fast.histogram.has_value());
    EXPECT_EQ(*fast.histogram, expected) << n;
    EXPECT_EQ(*ref.histogram, expected) << n;
    EXPECT_EQ(fast.uncovered_count, expected[0] + expected[1] + expected[2]);
    EXPECT_EQ(fast.uncovered_count, ref.uncovered_count);
    EXPECT_EQ(fast.witnesses, ref.witnesses);
    EXPECT_EQ(fast.subsets_total, oracle::choose(n, 6));
  }
}

TEST(VerifyExhaustive, FastMatchesReferenceOnRandomRangesAtSixty) {
  const Params p = Params::standard();
  const Family f = random_family(p, 300, 77);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Count> pick(0, p.subset_count() - 30000);
  for (int i = 0; i < 6; ++i) {
    const Count begin = pick(rng);
    const RankRange range{begin, begin + 20000 + i * 1000};
    VerifyOptions o;
    o.range = range;
    o.workers = 1;
    o.witness_limit = 50;
    const CoverageReport fast = verify_exhaustive(f, o);
    const CoverageReport ref = verify_reference(f, range, 50);
    EXPECT_EQ(*fast.histogram, *ref.histogram);
    EXPECT_EQ(fast.uncovered_count, ref.uncovered_count);
    EXPECT_EQ(fast.witnesses, ref.witnesses);
    EXPECT_EQ(fast.subsets_total, range.end - range.begin);
  }
}

TEST(VerifyExhaustive, SingleBlockHistogramAtSixty) {
  const Params p = Params::standard();
  const std::vector<int> first = {1, 2, 3, 4, 5, 6};
  const Family f(p, {block_from_elements(first, p)}, "single");
  VerifyOptions o;
  o.witness_limit = 0;
  const CoverageReport r = verify_exhaustive(f, o);
  ASSERT_TRUE(r.histogram.has_value());
  ASSERT_EQ(r.histogram->size(), 7u);
  for (int i = 0; i <= 6; ++i) {
    EXPECT_EQ((*r.histogram)[i], oracle::choose(6, i) * oracle::choose(54, 6 - i)) << i;
  }
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(VerifyExhaustive, CoverageOnlyAgreesAndOmitsHistogram) {
  const Params p = Params::make(16, 6, 3);
  const Family f = random_family(p, 12, 3);
  VerifyOptions o;
  o.coverage_only = true;
  const CoverageReport quick = verify_exhaustive(f, o);
  const CoverageReport full = verify_exhaustive(f);
  EXPECT_FALSE(quick.histogram.has_value());
  EXPECT_EQ(quick.uncovered_count, full.uncovered_count);
  EXPECT_EQ(quick.witnesses, full.witnesses);
}

TEST(VerifyExhaustive, WitnessesAscendingAndLimited) {
  const Params p = Params::make(14, 6, 3);
  const Family f = random_family(p, 3, 8);
  VerifyOptions o;
  o.witness_limit = 5;
  const CoverageReport r = verify_exhaustive(f, o);
  ASSERT_GT(r.uncovered_count, 5u);
  ASSERT_EQ(r.witnesses.size(), 5u);
  const auto all = as_subsets(f);
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    EXPECT_LT(oracle::best_intersection(r.witnesses[i].elements(), all), 3);
    if (i > 0) EXPECT_LT(rank_of(r.witnesses[i - 1].mask), rank_of(r.witnesses[i].mask));
  }
}

TEST(VerifyExhaustive, DeterministicAcrossWorkerCounts) {
  const Params p = Params::make(24, 6, 3);  // 134596 subsets, one chunk
  const Family f = random_family(p, 20, 4);
  const CoverageReport one = verify_exhaustive(f, workers(1));
  for (int w : {2, 3, 8}) {
    const CoverageReport r = verify_exhaustive(f, workers(w));
    EXPECT_EQ(*r.histogram, *one.histogram);
    EXPECT_EQ(r.witnesses, one.witnesses);
    EXPECT_EQ(r.worker_count, w);
  }
  // Several chunks.
  const Params q = Params::make(30, 6, 3);
  const Family g = random_family(q, 40, 5);
  const CoverageReport base = verify_exhaustive(g, workers(1));
  const CoverageReport multi = verify_exhaustive(g, workers(4));
  EXPECT_EQ(*base.histogram, *multi.histogram);
  EXPECT_EQ(base.witnesses, multi.witnesses);
  EXPECT_EQ(base.uncovered_count, multi.uncovered_count);
}

TEST(VerifyExhaustive, AddingBlocksNeverUncovers) {
  const Params p = Params::make(14, 6, 3);
  std::vector<Block> blocks = random_subsets(p, 40, 21);
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
  Count prev = p.subset_count();
  for (std::size_t i = 1; i <= blocks.size(); ++i) {
    const Family f(p, {blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(i)}, "prefix");
    const Count now = verify_exhaustive(f).uncovered_count;
    ASSERT_LE(now, prev);
    prev = now;
  }
}

TEST(VerifyExhaustive, Errors) {
  const Params p = Params::make(12, 6, 3);
  const Family empty(p, {}, "empty");
  try {
    verify_exhaustive(empty);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kEmptyFamily);
  }
  const Family f = family_generalized(6);
  VerifyOptions o;
  o.range = RankRange{0, 925};
  EXPECT_THROW(verify_exhaustive(f, o), Error);
}

TEST(VerifyGeneralized, SmallMCoverFully) {
  for (int m : {6, 8, 10, 12}) {
    const Family f = family_generalized(m);
    const CoverageReport r = verify_exhaustive(f);
    EXPECT_EQ(r.uncovered_count, 0u) << m;
    EXPECT_EQ(r.subsets_total, oracle::choose(2 * m, 6));
    const auto hist = oracle::histogram(2 * m, 6, as_subsets(f));
    EXPECT_EQ(*r.histogram, hist);
    EXPECT_NO_THROW(verify_constructive(scheme_generalized(m), f));
  }
}

TEST(VerifyConstructive, Family910HasNoFailures) {
  VerifyOptions o;
  o.workers = 1;
  const CoverageReport r = verify_constructive(scheme_two_halves(), family_910(), o);
  EXPECT_EQ(r.uncovered_count, 0u);
  EXPECT_EQ(r.subsets_total, 50063860u);
  EXPECT_FALSE(r.histogram.has_value());
  EXPECT_EQ(r.mode, VerifyMode::kConstructive);
}

TEST(VerifyConstructive, MissingBlockIsReported) {
  const Family full = family_910();
  std::vector<Block> blocks(full.blocks().begin() + 1, full.blocks().end());
  ASSERT_EQ(full.blocks()[0].to_string(), "1 2 3 4 5 6");
  const Family missing(full.params(), blocks, "910 minus first");
  try {
    verify_constructive(scheme_two_halves(), missing);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kConstructionFailure);
    ASSERT_TRUE(e.witness().has_value());
    EXPECT_EQ(*e.witness(), Mask{0x3f});
  }
}

TEST(VerifyReference, SampleMatchesFast) {
  const Params p = Params::standard();
  const Family f = family_388();
  const auto sample = random_subsets(p, 20000, 99);
  const CoverageReport ref = verify_reference(f, sample, 1000);
  Count uncovered = 0;
  std::vector<Mask> masks = f.masks();
  std::vector<Count> hist(7, 0);
  for (const Block& s : sample) {
    const int best = max_intersection(s.mask, masks, 6);
    ++hist[best];
    uncovered += best < 3;
  }
  EXPECT_EQ(*ref.histogram, hist);
  EXPECT_EQ(ref.uncovered_count, uncovered);
  EXPECT_EQ(ref.mode, VerifyMode::kReference);
}

TEST(VerifyModes, ParseNames) {
  EXPECT_EQ(parse_verify_mode("fast"), VerifyMode::kFast);
  EXPECT_EQ(parse_verify_mode("reference"), VerifyMode::kReference);
  EXPECT_EQ(parse_verify_mode("constructive"), VerifyMode::kConstructive);
  EXPECT_FALSE(parse_verify_mode("quick").has_value());
  EXPECT_STREQ(verify_mode_name(VerifyMode::kConstructive), "constructive");
}

}  // namespace
}  // namespace jcover

#include "jcover/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <random>
#include <thread>

#include "parallel.hpp"

namespace jcover {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Partial {
  std::vector<Count> histogram;
  Count uncovered = 0;
  std::vector<Block> witnesses;
};

void merge_into(CoverageReport& report, const std::vector<Partial>& partials,
                std::size_t witness_limit, bool with_histogram) {
  std::vector<Count> histogram(static_cast<std::size_t>(report.params.k()) + 1, 0);
  for (const Partial& p : partials) {
    for (std::size_t i = 0; i < p.histogram.size(); ++i) histogram[i] += p.histogram[i];
    report.uncovered_count += p.uncovered;
    for (const Block& w : p.witnesses) {
      if (report.witnesses.size() >= witness_limit) break;
      report.witnesses.push_back(w);
    }
  }
  if (with_histogram) report.histogram = std::move(histogram);
}

void require_nonempty(const Family& family) {
  if (family.empty()) throw Error(Errc::kEmptyFamily, "family has no blocks");
}

RankRange checked_range(const Params& params, std::optional<RankRange> range) {
  enumerate_k_subsets(params, range);  // throws on a bad range
  return range.value_or(RankRange{0, params.subset_count()});
}

int reference_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  int count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

const char* verify_mode_name(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::kFast: return "fast";
    case VerifyMode::kReference: return "reference";
    case VerifyMode::kConstructive: return "constructive";
  }
  return "fast";
}

std::optional<VerifyMode> parse_verify_mode(const std::string& text) {
  if (text == "fast") return VerifyMode::kFast;
  if (text == "reference") return VerifyMode::kReference;
  if (text == "constructive") return VerifyMode::kConstructive;
  return std::nullopt;
}

int resolve_workers(int requested) noexcept {
  if (requested > 0) return requested;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int max_intersection(Mask s, std::span<const Mask> blocks, int stop_at) noexcept {
  constexpr std::size_t kBatch = 16;
  const Mask* data = blocks.data();
  const std::size_t size = blocks.size();
  int best = 0;
  std::size_t i = 0;
  for (; i + kBatch <= size; i += kBatch) {
    int batch = 0;
    for (std::size_t j = 0; j < kBatch; ++j) {
      const int c = std::popcount(s & data[i + j]);
      batch = c > batch ? c : batch;
    }
    if (batch > best) {
      best = batch;
      if (best >= stop_at) return best;
    }
  }
  for (; i < size; ++i) {
    const int c = std::popcount(s & data[i]);
    if (c > best) {
      best = c;
      if (best >= stop_at) return best;
    }
  }
  return best;
}

CoverageReport verify_exhaustive(const Family& family,
                                 const VerifyOptions& options) {
  require_nonempty(family);
  const auto start = Clock::now();
  const Params& params = family.params();
  const RankRange whole = checked_range(params, options.range);
  const std::vector<Mask> blocks = family.masks();
  const int threshold = params.threshold();
  const int stop_at = options.coverage_only ? threshold : params.k();
  const auto chunks = split_ranks(whole, kVerifyChunk);
  std::vector<Partial> partials(chunks.size());
  const int workers = resolve_workers(options.workers);

  detail::parallel_for_index(chunks.size(), workers, [&](std::size_t c) {
    Partial& p = partials[c];
    p.histogram.assign(static_cast<std::size_t>(params.k()) + 1, 0);
    for (SubsetCursor cur(params, chunks[c]); !cur.done(); cur.advance()) {
      const int best = max_intersection(cur.mask(), blocks, stop_at);
      ++p.histogram[static_cast<std::size_t>(best)];
      if (best < threshold) {
        ++p.uncovered;
        if (p.witnesses.size() < options.witness_limit) {
          p.witnesses.push_back(Block{cur.mask()});
        }
      }
    }
  });

  CoverageReport report;
  report.params = params;
  report.family_size = family.size();
  report.subsets_total = whole.size();
  report.mode = VerifyMode::kFast;
  report.worker_count = workers;
  merge_into(report, partials, options.witness_limit, !options.coverage_only);
  report.elapsed_ms = ms_since(start);
  return report;
}

CoverageReport verify_reference(const Family& family,
                                std::span<const Block> sample,
                                std::size_t witness_limit) {
  require_nonempty(family);
  const auto start = Clock::now();
  const Params& params = family.params();
  std::vector<std::vector<int>> lists;
  lists.reserve(family.size());
  for (const Block& b : family.blocks()) lists.push_back(b.elements());

  CoverageReport report;
  report.params = params;
  report.family_size = family.size();
  report.subsets_total = sample.size();
  report.mode = VerifyMode::kReference;
  std::vector<Count> histogram(static_cast<std::size_t>(params.k()) + 1, 0);
  std::vector<Block> uncovered;
  for (const Block& s : sample) {
    const std::vector<int> elements = s.elements();
    int best = 0;
    for (const auto& list : lists) {
      best = std::max(best, reference_intersection(elements, list));
    }
    ++histogram[static_cast<std::size_t>(best)];
    if (best < params.threshold()) uncovered.push_back(s);
  }
  report.uncovered_count = uncovered.size();
  std::sort(uncovered.begin(), uncovered.end());
  if (uncovered.size() > witness_limit) uncovered.resize(witness_limit);
  report.witnesses = std::move(uncovered);
  report.histogram = std::move(histogram);
  report.elapsed_ms = ms_since(start);
  return report;
}

CoverageReport verify_reference(const Family& family, RankRange range,
                                std::size_t witness_limit) {
  std::vector<Block> sample;
  for (Block s : enumerate_k_subsets(family.params(), range)) sample.push_back(s);
  return verify_reference(family, sample, witness_limit);
}

CoverageReport verify_constructive(const PartitionScheme& scheme,
                                   const Family& family,
                                   const VerifyOptions& options) {
  require_nonempty(family);
  if (!(scheme.params == family.params())) {
    throw Error(Errc::kInvalidParams, "scheme and family parameters differ");
  }
  const auto start = Clock::now();
  const Params& params = family.params();
  const CoverFinder finder(scheme);
  const RankRange whole = checked_range(params, options.range);
  const auto chunks = split_ranks(whole, kVerifyChunk);
  constexpr Count kNone = std::numeric_limits<Count>::max();
  std::vector<Count> failure(chunks.size(), kNone);
  std::vector<Mask> failing_subset(chunks.size(), 0);
  std::atomic<std::size_t> first_failed_chunk{chunks.size()};
  const int workers = resolve_workers(options.workers);

  detail::parallel_for_index(chunks.size(), workers, [&](std::size_t c) {
    if (c > first_failed_chunk.load(std::memory_order_relaxed)) return;
    for (SubsetCursor cur(params, chunks[c]); !cur.done(); cur.advance()) {
      const Block s{cur.mask()};
      const CoveringChoice choice = finder.find(s);
      const bool ok = choice.block.mask != 0 &&
                      intersection_size(s, choice.block) >= 3 &&
                      family.contains(choice.block);
      if (!ok) {
        failure[c] = cur.rank();
        failing_subset[c] = s.mask;
        std::size_t seen = first_failed_chunk.load(std::memory_order_relaxed);
        while (c < seen && !first_failed_chunk.compare_exchange_weak(
                               seen, c, std::memory_order_relaxed)) {
        }
        return;
      }
    }
  });

  for (std::size_t c = 0; c < chunks.size(); ++c) {
    if (failure[c] != kNone) {
      const Block s{failing_subset[c]};
      throw Error(Errc::kConstructionFailure,
                  "no family block from the constructive rule covers {" +
                      s.to_string() + "} (rank " + std::to_string(failure[c]) +
                      ")",
                  s.mask);
    }
  }

  CoverageReport report;
  report.params = params;
  report.family_size = family.size();
  report.subsets_total = whole.size();
  report.mode = VerifyMode::kConstructive;
  report.worker_count = workers;
  report.elapsed_ms = ms_since(start);
  return report;
}

std::vector<Block> random_subsets(const Params& params, std::size_t count,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Count> pick(0, params.subset_count() - 1);
  std::vector<Block> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(Block{unrank(pick(rng), params.k(), params.n())});
  }
  return out;
}

}  // namespace jcover

#pragma once

// Exhaustive covering-radius verification.
//
// The rank space [0, C(n, k)) is cut into fixed-size chunks independent of
// the worker count. Workers claim chunks, each chunk produces a partial
// report, and partials are merged in chunk order, so the output is the same
// for any number of workers.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jcover/constructions.hpp"
#include "jcover/core.hpp"

namespace jcover {

enum class VerifyMode { kFast, kReference, kConstructive };

const char* verify_mode_name(VerifyMode mode);
std::optional<VerifyMode> parse_verify_mode(const std::string& text);

struct CoverageReport {
  Params params = Params::standard();
  Count family_size = 0;
  Count subsets_total = 0;
  // histogram[i] = number of subsets whose best intersection with the family
  // is exactly i. Absent in coverage-only runs.
  std::optional<std::vector<Count>> histogram;
  Count uncovered_count = 0;
  // Uncovered subsets, ascending by rank, at most witness_limit of them.
  std::vector<Block> witnesses;
  VerifyMode mode = VerifyMode::kFast;
  double elapsed_ms = 0.0;
  int worker_count = 1;

  bool covered() const noexcept { return uncovered_count == 0; }
  Count covered_count() const noexcept {
    return subsets_total - uncovered_count;
  }
};

inline constexpr std::size_t kDefaultWitnessLimit = 16;
inline constexpr Count kVerifyChunk = Count{1} << 18;

struct VerifyOptions {
  std::size_t witness_limit = kDefaultWitnessLimit;
  // 0 selects std::thread::hardware_concurrency().
  int workers = 0;
  // Stop scanning a subset once some block reaches the threshold. Only the
  // uncovered count and witnesses are produced.
  bool coverage_only = false;
  // Restrict to a rank interval; the whole space when absent.
  std::optional<RankRange> range;
};

int resolve_workers(int requested) noexcept;

// max over blocks of popcount(s & block), returning early once the running
// maximum reaches stop_at.
int max_intersection(Mask s, std::span<const Mask> blocks,
                     int stop_at) noexcept;

// Throws kEmptyFamily.
CoverageReport verify_exhaustive(const Family& family,
                                 const VerifyOptions& options = {});

// Single-threaded oracle: sorted element lists and a merge-style
// intersection count, no bit tricks. Histogram always present.
CoverageReport verify_reference(const Family& family,
                                std::span<const Block> sample,
                                std::size_t witness_limit = kDefaultWitnessLimit);
CoverageReport verify_reference(const Family& family, RankRange range,
                                std::size_t witness_limit = kDefaultWitnessLimit);

// For every subset, asks the scheme's CoverFinder for a block and checks it
// is a family member meeting the subset in at least three elements. Throws
// kConstructionFailure carrying the lowest-rank violating subset.
CoverageReport verify_constructive(const PartitionScheme& scheme,
                                   const Family& family,
                                   const VerifyOptions& options = {});

// Uniformly random k-subsets (mt19937_64 seeded), for cross-checks.
std::vector<Block> random_subsets(const Params& params, std::size_t count,
                                  std::uint64_t seed);

}  // namespace jcover

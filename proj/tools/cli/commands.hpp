#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jcover/core.hpp"

namespace jcover::cli {

// 0: success / covered. 1: usage or I/O error. 2: the run completed but the
// semantic expectation failed (uncovered subsets, no matching block, input
// not a cover).
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitSemantic = 2 };

// Entry point shared by the jcover binary and the tests. args excludes the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

struct QueryMatch {
  Block block;
  Block common;  // block ∩ pick
};

struct QueryResult {
  Block pick;
  std::vector<QueryMatch> matches;
  // threshold-subsets of the pick contained in at least one block, ascending.
  std::vector<Block> contained_trios;
  Count trio_total = 0;

  int exit_code() const noexcept {
    return matches.empty() ? kExitSemantic : kExitOk;
  }
};

// "a,b,c,..." -> block; throws Error on duplicates, range or count problems.
Block parse_pick(const std::string& text, const Params& params);

QueryResult query_family(const Family& family, Block pick);

}  // namespace jcover::cli

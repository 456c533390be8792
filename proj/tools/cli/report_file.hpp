#pragma once

// JSON coverage reports with a fixed field set:
//   n, k, radius, family_size, subsets_total, uncovered_count, histogram,
//   witnesses, mode, elapsed_ms, workers, provenance
// histogram is null for coverage-only runs. Keys are emitted in that order.

#include <string>

#include "jcover/verifier.hpp"

namespace jcover::cli {

std::string serialize_report(const CoverageReport& report,
                             const std::string& provenance);

// Inverse of serialize_report; throws Error(kParse) on missing or mistyped
// fields.
CoverageReport parse_report(const std::string& text, std::string* provenance = nullptr);

}  // namespace jcover::cli

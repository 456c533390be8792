#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace jcover {

enum class Errc {
  kInvalidParams,
  kDuplicateElement,
  kOutOfRange,
  kWrongCardinality,
  kRangeOutOfBounds,
  kInvalidBlock,
  kDuplicateBlock,
  kTooFewPairs,
  kOverlappingPairs,
  kInvalidM,
  kSchemeNotBipartite,
  kEmptyFamily,
  kConstructionFailure,
  kOutOfMemoryBudget,
  kNotACover,
  kPoolDoesNotCover,
  kParse,
};

const char* errc_name(Errc code);

// Every failure in the library surfaces as this exception. Failures that are
// about a specific k-subset (an uncovered subset, a subset the constructive
// argument could not place) carry it as a witness mask.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what,
        std::optional<std::uint64_t> witness = std::nullopt)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        witness_(witness) {}

  Errc code() const noexcept { return code_; }
  const std::optional<std::uint64_t>& witness() const noexcept {
    return witness_;
  }

 private:
  Errc code_;
  std::optional<std::uint64_t> witness_;
};

}  // namespace jcover

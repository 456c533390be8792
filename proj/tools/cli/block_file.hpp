#pragma once

// Text block files: optional "# key: value" header comments, then one block
// per line as ascending 1-indexed integers separated by single spaces.
//
// Recognized header keys: family, n, k, radius, seed, relabeling. Other
// comment lines are kept verbatim but carry no meaning.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jcover/constructions.hpp"
#include "jcover/core.hpp"

namespace jcover::cli {

struct BlockFileHeader {
  std::string family;
  std::optional<int> n;
  std::optional<int> k;
  std::optional<int> radius;
  std::optional<std::uint64_t> seed;
  std::optional<Relabeling> relabeling;
};

struct BlockFile {
  BlockFileHeader header;
  Family family;
};

struct ParseOverrides {
  std::optional<int> n;
  std::optional<int> radius;
};

void write_block_file(std::ostream& os, const Family& family,
                      const BlockFileHeader& header);
std::string serialize_block_file(const Family& family,
                                 const BlockFileHeader& header);

// n comes from the override, else the header, else the largest element; k
// from the header or the first block; radius from the override, the header,
// or 3. Throws Error(kParse) with a line number on malformed input, and
// rejects duplicate or non-ascending lines.
BlockFile parse_block_file(std::istream& is, const ParseOverrides& overrides = {});
BlockFile read_block_file(const std::string& path,
                          const ParseOverrides& overrides = {});

// Header describing a family built in memory.
BlockFileHeader header_for(const Family& family);

}  // namespace jcover::cli

#include "cli/block_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace jcover::cli {
namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& why) {
  throw Error(Errc::kParse, "line " + std::to_string(line) + ": " + why);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& text, std::size_t line) {
  int value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    parse_error(line, "expected an integer, got '" + text + "'");
  }
  return value;
}

}  // namespace

BlockFileHeader header_for(const Family& family) {
  BlockFileHeader h;
  h.family = family.provenance();
  h.n = family.params().n();
  h.k = family.params().k();
  h.radius = family.params().radius();
  return h;
}

void write_block_file(std::ostream& os, const Family& family,
                      const BlockFileHeader& header) {
  if (!header.family.empty()) os << "# family: " << header.family << '\n';
  os << "# n: " << family.params().n() << '\n';
  os << "# k: " << family.params().k() << '\n';
  os << "# radius: " << family.params().radius() << '\n';
  if (header.seed) os << "# seed: " << *header.seed << '\n';
  if (header.relabeling) {
    os << "# relabeling: " << header.relabeling->to_string() << '\n';
  }
  for (const Block& b : family.blocks()) os << b.to_string() << '\n';
}

std::string serialize_block_file(const Family& family,
                                 const BlockFileHeader& header) {
  std::ostringstream os;
  write_block_file(os, family, header);
  return os.str();
}

BlockFile parse_block_file(std::istream& is, const ParseOverrides& overrides) {
  BlockFileHeader header;
  std::string relabeling_text;
  std::vector<std::vector<int>> rows;
  std::vector<std::size_t> row_lines;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = trim(body.substr(0, colon));
      const std::string value = trim(body.substr(colon + 1));
      if (key == "family") header.family = value;
      else if (key == "n") header.n = parse_int(value, line_no);
      else if (key == "k") header.k = parse_int(value, line_no);
      else if (key == "radius") header.radius = parse_int(value, line_no);
      else if (key == "seed") header.seed = std::stoull(value);
      else if (key == "relabeling") relabeling_text = value;
      continue;
    }
    std::vector<int> row;
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) row.push_back(parse_int(token, line_no));
    if (!std::is_sorted(row.begin(), row.end()) ||
        std::adjacent_find(row.begin(), row.end()) != row.end()) {
      parse_error(line_no, "elements must be strictly ascending");
    }
    rows.push_back(std::move(row));
    row_lines.push_back(line_no);
  }

  int n = overrides.n.value_or(header.n.value_or(0));
  if (n == 0) {
    for (const auto& row : rows) {
      if (!row.empty()) n = std::max(n, row.back());
    }
  }
  int k = header.k.value_or(rows.empty() ? 0 : static_cast<int>(rows.front().size()));
  if (n == 0 || k == 0) {
    throw Error(Errc::kParse, "cannot determine n and k from an empty file");
  }
  const int radius = overrides.radius.value_or(header.radius.value_or(3));
  const Params params = Params::make(n, k, radius);

  std::vector<Block> blocks;
  blocks.reserve(rows.size());
  std::unordered_set<Mask> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Block b;
    try {
      b = block_from_elements(rows[i], params);
    } catch (const Error& e) {
      parse_error(row_lines[i], e.what());
    }
    if (!seen.insert(b.mask).second) {
      parse_error(row_lines[i], "duplicate block {" + b.to_string() + "}");
    }
    blocks.push_back(b);
  }
  if (!relabeling_text.empty()) {
    header.relabeling = parse_relabeling(relabeling_text, n);
  }
  header.n = n;
  header.k = k;
  header.radius = radius;
  Family family(params, std::move(blocks), header.family);
  return BlockFile{std::move(header), std::move(family)};
}

BlockFile read_block_file(const std::string& path,
                          const ParseOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kParse, "cannot open " + path);
  return parse_block_file(in, overrides);
}

}  // namespace jcover::cli

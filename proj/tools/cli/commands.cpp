#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cli/block_file.hpp"
#include "cli/report_file.hpp"
#include "jcover/bounds.hpp"
#include "jcover/constructions.hpp"
#include "jcover/optimizer.hpp"
#include "jcover/verifier.hpp"

namespace jcover::cli {
namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os || !(os << text) || !os.flush()) {
    throw Error(Errc::kParse, "cannot write " + path);
  }
}

RankRange parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(Errc::kParse, "range must look like BEGIN:END");
  }
  return RankRange{std::stoull(text.substr(0, colon)),
                   std::stoull(text.substr(colon + 1))};
}

void print_blocks_or_file(const Family& family, const BlockFileHeader& header,
                          const std::string& out_path, std::ostream& out,
                          std::ostream& err, const std::string& summary) {
  if (out_path.empty()) {
    write_block_file(out, family, header);
    err << summary;
  } else {
    write_text(out_path, serialize_block_file(family, header));
    out << summary;
  }
}

void print_report(std::ostream& out, const CoverageReport& r,
                  const std::string& provenance) {
  out << "family: " << provenance << '\n'
      << "mode: " << verify_mode_name(r.mode) << '\n'
      << "n: " << r.params.n() << '\n'
      << "k: " << r.params.k() << '\n'
      << "radius: " << r.params.radius() << '\n'
      << "family_size: " << r.family_size << '\n'
      << "subsets_total: " << r.subsets_total << '\n'
      << "uncovered_count: " << r.uncovered_count << '\n'
      << "covered_fraction: " << r.covered_count() << '/' << r.subsets_total
      << '\n';
  if (r.histogram) {
    out << "histogram:";
    for (Count c : *r.histogram) out << ' ' << c;
    out << '\n';
  }
  for (const Block& w : r.witnesses) out << "witness: " << w.to_string() << '\n';
  out << "result: " << (r.covered() ? "covered" : "not covered") << '\n';
}

PartitionScheme constructive_scheme(const BlockFile& file) {
  const int n = file.family.params().n();
  if (n % 2 != 0) {
    throw Error(Errc::kSchemeNotBipartite,
                "constructive mode needs an even ground set");
  }
  PartitionScheme scheme = scheme_generalized(n / 2);
  scheme.params = file.family.params();
  if (file.header.relabeling) scheme = relabel(scheme, *file.header.relabeling);
  return scheme;
}

PartitionScheme named_scheme(const std::string& name) {
  if (name == "f334") return scheme_grouped_334();
  return scheme_two_halves();
}

}  // namespace

Block parse_pick(const std::string& text, const Params& params) {
  std::vector<int> elements;
  std::istringstream is(text);
  std::string token;
  while (std::getline(is, token, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw Error(Errc::kParse, "pick: '" + token + "' is not an integer");
    }
    if (used != token.size()) {
      throw Error(Errc::kParse, "pick: '" + token + "' is not an integer");
    }
    elements.push_back(value);
  }
  return block_from_elements(elements, params);
}

QueryResult query_family(const Family& family, Block pick) {
  const Params& params = family.params();
  QueryResult result;
  result.pick = pick;
  for (const Block& b : family.blocks()) {
    if (intersection_size(pick, b) >= params.threshold()) {
      result.matches.push_back({b, Block{pick.mask & b.mask}});
    }
  }
  const std::vector<int> elements = pick.elements();
  const int size = static_cast<int>(elements.size());
  const int t = params.threshold();
  result.trio_total = binomial(size, t);
  if (t == 0) return result;
  for (Mask idx = (Mask{1} << t) - 1; idx < (Mask{1} << size);
       idx = next_combination(idx)) {
    Mask trio = 0;
    for (Mask m = idx; m != 0; m &= m - 1) {
      trio |= Mask{1} << (elements[std::countr_zero(m)] - 1);
    }
    for (const QueryMatch& match : result.matches) {
      if ((match.block.mask & trio) == trio) {
        result.contained_trios.push_back(Block{trio});
        break;
      }
    }
  }
  std::sort(result.contained_trios.begin(), result.contained_trios.end());
  return result;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Covering families of k-subsets in the Johnson scheme", "jcover"};
  app.require_subcommand(1);

  // gen
  std::string gen_name;
  std::optional<int> gen_m;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a construction as a block file");
  gen->add_option("family", gen_name, "f910 | f388 | f828 | gen2m")
      ->required()
      ->check(CLI::IsMember({"f910", "f388", "f828", "gen2m"}));
  gen->add_option("--m", gen_m, "Half size for gen2m (even, >= 6)");
  gen->add_option("--seed", gen_seed, "Relabel elements by a seeded permutation");
  gen->add_option("--out", gen_out, "Output path (default: stdout)");

  // verify
  std::string verify_path;
  std::string verify_mode = "fast";
  bool expect_cover = false;
  bool force_histogram = false;
  std::size_t witness_limit = kDefaultWitnessLimit;
  int workers = 0;
  std::string report_path;
  std::optional<int> n_override;
  std::optional<int> radius_override;
  std::string range_text;
  std::optional<std::size_t> sample_size;
  std::uint64_t sample_seed = 1;
  auto* verify = app.add_subcommand("verify", "Check the covering radius of a block file");
  verify->add_option("blocks", verify_path, "Block file")->required();
  verify->add_option("--mode", verify_mode, "fast | reference | constructive")
      ->check(CLI::IsMember({"fast", "reference", "constructive"}));
  verify->add_flag("--expect-cover", expect_cover,
                   "Exit 2 if any subset is uncovered; fast mode stops at the threshold");
  verify->add_flag("--histogram", force_histogram,
                   "Full histogram even with --expect-cover");
  verify->add_option("--witness-limit", witness_limit, "Uncovered subsets to list");
  verify->add_option("--workers", workers, "Threads (0 = all cores)");
  verify->add_option("--report", report_path, "Write a JSON report");
  verify->add_option("--n", n_override, "Ground set size override");
  verify->add_option("--radius", radius_override, "Covering radius override");
  verify->add_option("--range", range_text, "Rank interval BEGIN:END");
  verify->add_option("--sample", sample_size, "Reference mode: random subsets to check");
  verify->add_option("--sample-seed", sample_seed, "Seed for --sample");

  // bounds
  int bounds_n = 60;
  int bounds_k = 6;
  int bounds_r = 3;
  std::optional<Count> bounds_upper;
  auto* bounds = app.add_subcommand("bounds", "Sphere-covering lower bound");
  bounds->add_option("--n", bounds_n, "Ground set size");
  bounds->add_option("--k", bounds_k, "Subset size");
  bounds->add_option("--r", bounds_r, "Covering radius");
  bounds->add_option("--upper", bounds_upper, "Size of a known cover");

  // query
  std::string query_path;
  std::string pick_text;
  auto* query = app.add_subcommand("query", "List blocks meeting a pick in >= threshold elements");
  query->add_option("blocks", query_path, "Block file")->required();
  query->add_option("--pick", pick_text, "k comma-separated numbers")->required();

  // prune
  std::string prune_path;
  std::string prune_order = "index";
  std::uint64_t prune_seed = 0;
  std::string prune_out;
  auto* prune = app.add_subcommand("prune", "Drop blocks whose whole ball is covered twice");
  prune->add_option("blocks", prune_path, "Block file")->required();
  prune->add_option("--order", prune_order, "index | random")
      ->check(CLI::IsMember({"index", "random"}));
  prune->add_option("--seed", prune_seed, "Seed for --order random");
  prune->add_option("--out", prune_out, "Output path (default: stdout)");
  prune->add_option("--workers", workers, "Threads for the ledger build");

  // compositions
  int comp_k = 6;
  int comp_parts = 3;
  std::string comp_scheme;
  auto* comps = app.add_subcommand("compositions", "Distributions of k elements over parts");
  comps->add_option("--k", comp_k, "Subset size");
  comps->add_option("--parts", comp_parts, "Number of parts");
  comps->add_option("--scheme", comp_scheme, "f334 | f55: add subset counts")
      ->check(CLI::IsMember({"f334", "f55"}));

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("jcover");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      Family family = family_910();
      if (gen_name == "f388") {
        family = family_388();
      } else if (gen_name == "f828") {
        family = family_828();
      } else if (gen_name == "gen2m") {
        if (!gen_m) {
          err << "error: gen2m requires --m\n";
          return kExitUsage;
        }
        family = family_generalized(*gen_m);
      }
      BlockFileHeader header = header_for(family);
      if (gen_seed) {
        const Relabeling relabeling =
            seeded_relabeling(family.params().n(), *gen_seed);
        family = relabel(family, relabeling);
        header.seed = gen_seed;
        header.relabeling = relabeling;
      }
      std::ostringstream summary;
      summary << "family: " << family.provenance() << '\n'
              << "size: " << family.size() << '\n';
      print_blocks_or_file(family, header, gen_out, out, err, summary.str());
      return kExitOk;
    }

    if (verify->parsed()) {
      const BlockFile file =
          read_block_file(verify_path, ParseOverrides{n_override, radius_override});
      const Family& family = file.family;
      VerifyOptions options;
      options.witness_limit = witness_limit;
      options.workers = workers;
      options.coverage_only = expect_cover && !force_histogram;
      if (!range_text.empty()) options.range = parse_range(range_text);

      CoverageReport report;
      const auto mode = *parse_verify_mode(verify_mode);
      if (mode == VerifyMode::kFast) {
        report = verify_exhaustive(family, options);
      } else if (mode == VerifyMode::kReference) {
        if (sample_size) {
          report = verify_reference(
              family, random_subsets(family.params(), *sample_size, sample_seed),
              witness_limit);
        } else {
          report = verify_reference(
              family,
              options.range.value_or(RankRange{0, family.params().subset_count()}),
              witness_limit);
        }
      } else {
        try {
          report = verify_constructive(constructive_scheme(file), family, options);
        } catch (const Error& e) {
          if (e.code() != Errc::kConstructionFailure) throw;
          err << e.what() << '\n';
          if (e.witness()) out << "witness: " << Block{*e.witness()}.to_string() << '\n';
          out << "result: construction failure\n";
          return kExitSemantic;
        }
      }
      print_report(out, report, family.provenance());
      if (!report_path.empty()) {
        write_text(report_path, serialize_report(report, family.provenance()));
      }
      return expect_cover && !report.covered() ? kExitSemantic : kExitOk;
    }

    if (bounds->parsed()) {
      const BoundSummary s = sphere_covering_lower_bound(
          Params::make(bounds_n, bounds_k, bounds_r), bounds_upper);
      out << "n=" << bounds_n << '\n'
          << "k=" << bounds_k << '\n'
          << "radius=" << bounds_r << '\n'
          << "neighborhood_size=" << s.neighborhood_size << '\n'
          << "total_subsets=" << s.total_subsets << '\n'
          << "lower_bound=" << s.lower_bound << '\n';
      if (s.upper_bound_known) out << "upper_bound=" << *s.upper_bound_known << '\n';
      return kExitOk;
    }

    if (query->parsed()) {
      const BlockFile file = read_block_file(query_path);
      const Block pick = parse_pick(pick_text, file.family.params());
      const QueryResult result = query_family(file.family, pick);
      out << "pick: " << pick.to_string() << '\n';
      for (const QueryMatch& m : result.matches) {
        out << "match: " << m.block.to_string() << " | common: "
            << m.common.to_string() << '\n';
      }
      out << "matches: " << result.matches.size() << '\n'
          << "trios_contained: " << result.contained_trios.size() << " of "
          << result.trio_total << '\n';
      for (const Block& t : result.contained_trios) {
        out << "trio: " << t.to_string() << '\n';
      }
      return result.exit_code();
    }

    if (prune->parsed()) {
      const BlockFile file = read_block_file(prune_path);
      PruneOrder order;
      if (prune_order == "random") {
        order.kind = PruneOrder::Kind::kSeededRandom;
        order.seed = prune_seed;
      }
      LedgerOptions ledger;
      ledger.workers = workers;
      Family pruned = file.family;
      try {
        pruned = prune_redundant(file.family, order, ledger);
      } catch (const Error& e) {
        if (e.code() != Errc::kNotACover) throw;
        err << e.what() << '\n';
        if (e.witness()) out << "witness: " << Block{*e.witness()}.to_string() << '\n';
        return kExitSemantic;
      }
      BlockFileHeader header = file.header;
      header.family = pruned.provenance();
      std::ostringstream summary;
      summary << "family: " << pruned.provenance() << '\n'
              << "before: " << file.family.size() << '\n'
              << "after: " << pruned.size() << '\n';
      print_blocks_or_file(pruned, header, prune_out, out, err, summary.str());
      return kExitOk;
    }

    if (comps->parsed()) {
      std::vector<CompositionProfile> profiles;
      if (comp_scheme.empty()) {
        profiles = enumerate_compositions(comp_k, comp_parts);
      } else {
        const std::vector<int> sizes = named_scheme(comp_scheme).part_sizes();
        if (static_cast<int>(sizes.size()) != comp_parts) {
          err << "error: scheme " << comp_scheme << " has " << sizes.size()
              << " parts\n";
          return kExitUsage;
        }
        profiles = enumerate_compositions(comp_k, sizes);
      }
      for (int t = 1; t <= comp_parts; ++t) out << 'x' << t << ' ';
      out << "guaranteed";
      if (!comp_scheme.empty()) out << " subsets";
      out << '\n';
      Count total = 0;
      for (const auto& p : profiles) {
        for (int x : p.counts) out << x << ' ';
        out << (p.guaranteed ? "yes" : "no");
        if (p.subset_count) {
          out << ' ' << *p.subset_count;
          total += *p.subset_count;
        }
        out << '\n';
      }
      out << "profiles " << profiles.size() << '\n';
      if (!comp_scheme.empty()) out << "total " << total << '\n';
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace jcover::cli

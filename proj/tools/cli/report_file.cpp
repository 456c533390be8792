#include "cli/report_file.hpp"

#include <json.hpp>

namespace jcover::cli {

using Json = nlohmann::ordered_json;

std::string serialize_report(const CoverageReport& report,
                             const std::string& provenance) {
  Json j;
  j["n"] = report.params.n();
  j["k"] = report.params.k();
  j["radius"] = report.params.radius();
  j["family_size"] = report.family_size;
  j["subsets_total"] = report.subsets_total;
  j["uncovered_count"] = report.uncovered_count;
  j["histogram"] = report.histogram ? Json(*report.histogram) : Json(nullptr);
  Json witnesses = Json::array();
  for (const Block& w : report.witnesses) witnesses.push_back(w.elements());
  j["witnesses"] = std::move(witnesses);
  j["mode"] = verify_mode_name(report.mode);
  j["elapsed_ms"] = report.elapsed_ms;
  j["workers"] = report.worker_count;
  j["provenance"] = provenance;
  return j.dump(2) + "\n";
}

CoverageReport parse_report(const std::string& text, std::string* provenance) {
  try {
    const Json j = Json::parse(text);
    CoverageReport r;
    r.params = Params::make(j.at("n").get<int>(), j.at("k").get<int>(),
                            j.at("radius").get<int>());
    r.family_size = j.at("family_size").get<Count>();
    r.subsets_total = j.at("subsets_total").get<Count>();
    r.uncovered_count = j.at("uncovered_count").get<Count>();
    if (!j.at("histogram").is_null()) {
      r.histogram = j.at("histogram").get<std::vector<Count>>();
    }
    for (const auto& w : j.at("witnesses")) {
      r.witnesses.push_back(
          block_from_elements(w.get<std::vector<int>>(), r.params));
    }
    const auto mode = parse_verify_mode(j.at("mode").get<std::string>());
    if (!mode) throw Error(Errc::kParse, "unknown mode");
    r.mode = *mode;
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    r.worker_count = j.at("workers").get<int>();
    if (provenance) *provenance = j.at("provenance").get<std::string>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(Errc::kParse, std::string("report: ") + e.what());
  }
}

}  // namespace jcover::cli

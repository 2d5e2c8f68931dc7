#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "phasecalc/experiments.hpp"

namespace phasecalc {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no infinities; non-finite values are written as strings.
nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

const char* version() { return PHASECALC_VERSION; }

std::string report_json(const ExperimentConfig& config, const std::vector<SuiteResult>& results) {
  using J = nlohmann::ordered_json;
  const PhaseGrid pg = config.grid();
  J doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["experiment"] = config.id;
  doc["environment"] = {{"version", version()},
                        {"grid", {{"N", config.N}, {"d", config.d}, {"mode", config.mode}, {"h", pg.h()}}},
                        {"seed", config.ensembles.seed},
                        {"sample_seed", kDefaultSampleSeed}};
  bool all = true;
  J suites = J::array();
  for (const auto& r : results) {
    J checks = J::array();
    for (const auto& c : r.checks) {
      J row;
      row["name"] = c.name;
      row["criterion"] = c.criterion ? J(*c.criterion) : J(nullptr);
      row["measured"] = number(c.measured);
      row["relation"] = c.relation;
      row["threshold"] = number(c.threshold);
      row["pass"] = c.pass;
      checks.push_back(row);
    }
    suites.push_back({{"suite", r.suite}, {"pass", r.pass()}, {"checks", checks}});
    all = all && r.pass();
  }
  doc["pass"] = all;
  doc["suites"] = suites;
  return doc.dump(2) + "\n";
}

std::string suite_csv(const SuiteResult& result) {
  std::string out = "suite,check,criterion,measured,relation,threshold,pass\n";
  for (const auto& c : result.checks) {
    out += csv_field(result.suite) + "," + csv_field(c.name) + "," + (c.criterion ? std::to_string(*c.criterion) : "") +
           "," + g17(c.measured) + "," + c.relation + "," + g17(c.threshold) + "," + (c.pass ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace phasecalc

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "phasecalc/experiments.hpp"

using namespace phasecalc;
using nlohmann::json;

namespace {

// Field path carried by the ConfigError raised for `text`, or "" if it parses.
std::string error_field(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("shipped configurations") {
  const ExperimentConfig d = load_config(PHASECALC_SOURCE_DIR "/configs/default.json");
  const ExperimentConfig ref = default_config();
  CHECK(d.id == "default");
  CHECK(d.N == 48);
  REQUIRE(d.weights.size() == ref.weights.size());
  for (std::size_t i = 0; i < d.weights.size(); ++i) {
    CHECK(d.weights[i].id == ref.weights[i].id);
    CHECK(d.weights[i].kind == ref.weights[i].kind);
    CHECK(d.weights[i].params == ref.weights[i].params);
  }
  REQUIRE(d.experiments.size() == suite_names().size());
  for (std::size_t i = 0; i < d.experiments.size(); ++i) CHECK(d.experiments[i].suite == suite_names()[i]);
  const auto& mod = d.experiments[2];
  CHECK(mod.suite == "modspace");
  CHECK(mod.weights == std::vector<std::string>{"bracket1", "bracket2", "subexp"});
  CHECK(mod.windows == std::vector<std::string>{"gauss1", "gauss15"});

  const ExperimentConfig m = load_config(PHASECALC_SOURCE_DIR "/configs/minimal.json");
  CHECK(m.id == "minimal");
  CHECK(m.N == 32);
  REQUIRE(m.experiments.size() == 1);
  CHECK(m.experiments[0].suite == "combinat");

  CHECK_THROWS_AS(load_config(PHASECALC_SOURCE_DIR "/configs/malformed_weight.json"), ConfigError);
}

TEST_CASE("every criterion is owned by exactly one listed suite") {
  int owned = 0;
  for (const auto& s : suite_names()) owned += static_cast<int>(suite_criteria(s).size());
  CHECK(owned == 12);
  for (int k = 1; k <= 12; ++k) {
    const auto& crit = suite_criteria(criterion_suite(k));
    CHECK(std::count(crit.begin(), crit.end(), k) == 1);
  }
  CHECK_THROWS(criterion_suite(13));
}

TEST_CASE("configuration errors name the field") {
  CHECK(error_field(R"({"weights": [{"id": "a", "kind": "bracket", "params": {"t": 1}},
                                    {"id": "b", "kind": "foo"}]})") == "weights[1].kind");
  CHECK(error_field(R"({"weights": [{"id": "a", "kind": "subexp", "params": {"r": 0.3}}]})") ==
        "weights[0].params.s");
  CHECK(error_field(R"({"weights": [{"id": "a", "kind": "bracket", "params": {"t": 1, "q": 2}}]})") ==
        "weights[0].params.q");
  CHECK(error_field(R"({"weights": [{"id": "a", "kind": "bracket", "params": {"t": 1}},
                                    {"id": "a", "kind": "bracket", "params": {"t": 2}}]})") == "weights[1].id");
  CHECK(error_field(R"({"grid": {"N": 30}})") == "grid.N");
  CHECK(error_field(R"({"grid": {"N": 32, "d": 2}})") == "grid.d");
  CHECK(error_field(R"({"grid": {"mode": "custom"}})") == "grid.h");
  CHECK(error_field(R"({"grid": {"mode": "self_dual", "h": 0.5}})") == "grid.h");
  CHECK(error_field(R"({"grid": {"mode": "wide"}})") == "grid.mode");
  CHECK(error_field(R"({"colour": "blue"})") == "<document>.colour");
  CHECK(error_field(R"({"windows": [{"id": "w", "width": -1}]})") == "windows[0].width");
  CHECK(error_field(R"({"ensembles": {"seed": -3}})") == "ensembles.seed");
  CHECK(error_field(R"({"tolerances": {"ratio_K": 0.5}})") == "tolerances.ratio_K");
  CHECK(error_field(R"({"experiments": ["combinat", "fourier"]})") == "experiments[1]");
  CHECK(error_field(R"({"experiments": ["combinat", "combinat"]})") == "experiments[1]");
  CHECK(error_field(R"({"experiments": []})") == "experiments");
  CHECK(error_field(R"({"experiments": [{"suite": "modspace", "windows": ["gauss1", "gauss3"]}]})") ==
        "experiments[0].windows[1]");
  CHECK(error_field(R"({"experiments": [{"suite": "modspace", "weights": ["bracket7"]}]})") ==
        "experiments[0].weights[0]");
  CHECK(error_field(R"({"experiments": [{"suite": "modspace", "windows": ["gauss1"]}]})") ==
        "experiments[0].windows");
  CHECK(error_field(R"({"experiments": [{"suite": "combinat", "weights": ["bracket1"]}]})") == "experiments[0]");
  CHECK(error_field("{\"grid\": ") == "<document>");
  CHECK(error_field("[1, 2]") == "<document>");
  CHECK(error_field(R"({"grid": {"N": 64, "mode": "custom", "h": 0.25}})").empty());
}

TEST_CASE("explicit fields override the defaults") {
  const ExperimentConfig c = parse_config(R"({
    "grid": {"N": 64, "mode": "custom", "h": 0.25},
    "weights": [{"id": "w", "kind": "subexp", "params": {"r": 0.5, "s": 3, "every_rate": true}}],
    "windows": [{"id": "a", "width": 0.8}, {"id": "b", "kind": "gaussian", "width": 2}],
    "ensembles": {"seed": 11},
    "tolerances": {"route_tol": 1e-6},
    "experiments": ["modspace"]
  })", "custom");
  CHECK(c.id == "custom");
  CHECK(c.grid().h() == 0.25);
  CHECK(c.grid().n() == 64);
  CHECK(c.weight("w").params.at("every_rate") == 1.0);
  CHECK(c.window("b").width == 2.0);
  CHECK(c.ensembles.seed == 11);
  CHECK(c.ensembles.hermite_count == 6);
  CHECK(c.tolerances.route_tol == 1e-6);
  CHECK(c.tolerances.group_tol == 1e-6);
  REQUIRE(c.experiments.size() == 1);
  CHECK(c.experiments[0].windows == std::vector<std::string>{"a", "b"});
  CHECK_THROWS_AS(c.weight("missing"), std::out_of_range);
  CHECK(make_weight(c.weight("w"))(0.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("check relations") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(make_check("a", 1, 1.0, "<=", 1.0).pass);
  CHECK_FALSE(make_check("a", 1, 1.5, "<=", 1.0).pass);
  CHECK(make_check("a", 1, 1.0, ">=", 1.0).pass);
  CHECK_FALSE(make_check("a", 1, 1.0, ">", 1.0).pass);
  CHECK(make_check("a", 1, 0.0, "==", 0.0).pass);
  for (const char* rel : {"<=", ">=", ">", "==", "finite"}) CHECK_FALSE(make_check("a", 1, nan, rel, 0.0).pass);
  CHECK_FALSE(make_check("a", 1, inf, "finite", 0.0).pass);
  CHECK_THROWS_AS(make_check("a", 1, 0.0, "<", 1.0), std::invalid_argument);
}

TEST_CASE("report formats") {
  SuiteResult r;
  r.suite = "quantize";
  r.checks.push_back(make_check("plain", 2, 0.1, "<=", 1e-12));
  r.checks.push_back(make_check("name, with \"quotes\"", std::nullopt, 1.0 / 3.0, ">=", 0.0));
  r.checks.push_back(make_check("unbounded", 3, std::numeric_limits<double>::infinity(), "finite", 0.0));

  const std::string csv = suite_csv(r);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "suite,check,criterion,measured,relation,threshold,pass");
  std::getline(lines, line);
  CHECK(line == "quantize,plain,2,0.10000000000000001,<=,9.9999999999999998e-13,false");
  std::getline(lines, line);
  CHECK(line == "quantize,\"name, with \"\"quotes\"\"\",,0.33333333333333331,>=,0,true");
  std::getline(lines, line);
  CHECK(line == "quantize,unbounded,3,inf,finite,0,false");
  CHECK(std::stod("0.10000000000000001") == 0.1);

  const ExperimentConfig cfg = default_config();
  const std::string text = report_json(cfg, {r});
  CHECK(text == report_json(cfg, {r}));
  const json doc = json::parse(text);
  CHECK(doc.at("schema_version") == kReportSchemaVersion);
  CHECK(doc.at("experiment") == "default");
  CHECK(doc.at("environment").at("seed") == cfg.ensembles.seed);
  CHECK(doc.at("environment").at("grid").at("N") == 48);
  CHECK(doc.at("environment").at("version") == std::string(version()));
  CHECK(doc.at("pass") == false);
  const json& rows = doc.at("suites").at(0).at("checks");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].at("measured").get<double>() == 0.1);
  CHECK(rows[1].at("criterion").is_null());
  CHECK(rows[2].at("measured") == "inf");
}

TEST_CASE("suite run is deterministic") {
  const ExperimentConfig cfg = parse_config(R"({"grid": {"N": 32}, "experiments": ["combinat"]})", "minimal");
  const SuiteResult a = run_suite(cfg.experiments[0], cfg);
  const SuiteResult b = run_suite(cfg.experiments[0], cfg);
  CHECK(a.pass());
  CHECK(suite_csv(a) == suite_csv(b));
  CHECK(report_json(cfg, {a}) == report_json(cfg, {b}));
  CHECK(run_criterion(11, cfg).size() == a.checks.size());
  CHECK_THROWS_AS(run_criterion(0, cfg), std::out_of_range);
}

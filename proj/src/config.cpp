#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "phasecalc/experiments.hpp"

namespace phasecalc {

namespace {

using nlohmann::json;

const std::set<std::string> kWeightKinds{"bracket", "subexp", "constant"};

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + "." + key, "missing");
  return obj.at(key);
}

void expect_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
}

void expect_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

long get_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<long>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(path + "." + it.key(), "unknown field");
}

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

void validate_weight(const WeightSpec& w, const std::string& path) {
  auto need = [&](const char* key) {
    if (!w.params.count(key)) throw ConfigError(path + ".params." + key, "missing for kind '" + w.kind + "'");
    return w.params.at(key);
  };
  std::set<std::string> allowed;
  if (w.kind == "bracket") {
    need("t");
    allowed = {"t"};
  } else if (w.kind == "subexp") {
    if (need("r") < 0) throw ConfigError(path + ".params.r", "must be nonnegative");
    if (need("s") <= 0) throw ConfigError(path + ".params.s", "must be positive");
    allowed = {"r", "s", "every_rate"};
  } else {
    if (need("c") <= 0) throw ConfigError(path + ".params.c", "must be positive");
    allowed = {"c"};
  }
  for (const auto& [k, v] : w.params)
    if (!allowed.count(k)) throw ConfigError(path + ".params." + k, "unknown parameter for kind '" + w.kind + "'");
}

void parse_grid(const json& g, ExperimentConfig& c) {
  expect_object(g, "grid");
  reject_unknown(g, {"N", "d", "mode", "h"}, "grid");
  if (g.contains("N")) c.N = static_cast<int>(get_integer(g.at("N"), "grid.N"));
  if (c.N < 8 || c.N > 512 || c.N % 4 != 0) throw ConfigError("grid.N", "must be a multiple of 4 in [8, 512]");
  if (g.contains("d")) c.d = static_cast<int>(get_integer(g.at("d"), "grid.d"));
  if (c.d != 1) throw ConfigError("grid.d", "only d = 1 is supported by the operator suites");
  if (g.contains("mode")) c.mode = get_string(g.at("mode"), "grid.mode");
  if (c.mode == "custom") {
    c.spacing = get_number(require(g, "h", "grid"), "grid.h");
    if (*c.spacing <= 0) throw ConfigError("grid.h", "must be positive");
  } else if (c.mode == "self_dual") {
    if (g.contains("h")) throw ConfigError("grid.h", "only allowed with mode 'custom'");
  } else {
    throw ConfigError("grid.mode", "unknown mode '" + c.mode + "' (expected self_dual or custom)");
  }
}

void parse_weights(const json& arr, ExperimentConfig& c) {
  expect_array(arr, "weights");
  c.weights.clear();
  std::set<std::string> ids;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = index_path("weights", i);
    const json& w = arr[i];
    expect_object(w, path);
    reject_unknown(w, {"id", "kind", "params"}, path);
    WeightSpec spec;
    spec.id = get_string(require(w, "id", path), path + ".id");
    if (!ids.insert(spec.id).second) throw ConfigError(path + ".id", "duplicate id '" + spec.id + "'");
    spec.kind = get_string(require(w, "kind", path), path + ".kind");
    if (!kWeightKinds.count(spec.kind))
      throw ConfigError(path + ".kind", "unknown weight kind '" + spec.kind + "' (expected bracket, subexp or constant)");
    if (w.contains("params")) {
      const json& p = w.at("params");
      expect_object(p, path + ".params");
      for (auto it = p.begin(); it != p.end(); ++it) {
        const std::string ppath = path + ".params." + it.key();
        spec.params[it.key()] = it->is_boolean() ? (it->get<bool>() ? 1.0 : 0.0) : get_number(*it, ppath);
      }
    }
    validate_weight(spec, path);
    c.weights.push_back(std::move(spec));
  }
}

void parse_windows(const json& arr, ExperimentConfig& c) {
  expect_array(arr, "windows");
  c.windows.clear();
  std::set<std::string> ids;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = index_path("windows", i);
    const json& w = arr[i];
    expect_object(w, path);
    reject_unknown(w, {"id", "kind", "width"}, path);
    WindowSpec spec;
    spec.id = get_string(require(w, "id", path), path + ".id");
    if (!ids.insert(spec.id).second) throw ConfigError(path + ".id", "duplicate id '" + spec.id + "'");
    if (w.contains("kind") && get_string(w.at("kind"), path + ".kind") != "gaussian")
      throw ConfigError(path + ".kind", "unknown window kind (expected gaussian)");
    if (w.contains("width")) spec.width = get_number(w.at("width"), path + ".width");
    if (spec.width <= 0) throw ConfigError(path + ".width", "must be positive");
    c.windows.push_back(std::move(spec));
  }
}

void parse_ensembles(const json& e, ExperimentConfig& c) {
  expect_object(e, "ensembles");
  reject_unknown(e, {"hermite_count", "random_coherent_count", "seed"}, "ensembles");
  if (e.contains("hermite_count"))
    c.ensembles.hermite_count = static_cast<int>(get_integer(e.at("hermite_count"), "ensembles.hermite_count"));
  if (e.contains("random_coherent_count"))
    c.ensembles.random_coherent_count =
        static_cast<int>(get_integer(e.at("random_coherent_count"), "ensembles.random_coherent_count"));
  if (e.contains("seed")) {
    const long s = get_integer(e.at("seed"), "ensembles.seed");
    if (s < 0) throw ConfigError("ensembles.seed", "must be nonnegative");
    c.ensembles.seed = static_cast<std::uint64_t>(s);
  }
  if (c.ensembles.hermite_count < 0 || c.ensembles.hermite_count > 20)
    throw ConfigError("ensembles.hermite_count", "must lie in [0, 20]");
  if (c.ensembles.random_coherent_count < 0 || c.ensembles.random_coherent_count > 50)
    throw ConfigError("ensembles.random_coherent_count", "must lie in [0, 50]");
  if (c.ensembles.hermite_count + c.ensembles.random_coherent_count < 2)
    throw ConfigError("ensembles", "needs at least two members in total");
}

void parse_tolerances(const json& t, ExperimentConfig& c) {
  expect_object(t, "tolerances");
  reject_unknown(t, {"route_tol", "group_tol", "ratio_K", "alias_budget"}, "tolerances");
  auto read = [&](const char* key, double& slot) {
    if (!t.contains(key)) return;
    slot = get_number(t.at(key), std::string("tolerances.") + key);
    if (slot <= 0) throw ConfigError(std::string("tolerances.") + key, "must be positive");
  };
  read("route_tol", c.tolerances.route_tol);
  read("group_tol", c.tolerances.group_tol);
  read("ratio_K", c.tolerances.ratio_K);
  read("alias_budget", c.tolerances.alias_budget);
  if (c.tolerances.ratio_K < 1) throw ConfigError("tolerances.ratio_K", "must be at least 1");
}

void parse_experiments(const json& arr, ExperimentConfig& c) {
  expect_array(arr, "experiments");
  if (arr.empty()) throw ConfigError("experiments", "must name at least one suite");
  c.experiments.clear();
  const auto& names = suite_names();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = index_path("experiments", i);
    SuiteRequest r;
    if (arr[i].is_string()) {
      r.suite = arr[i].get<std::string>();
    } else {
      expect_object(arr[i], path);
      reject_unknown(arr[i], {"suite", "weights", "windows"}, path);
      r.suite = get_string(require(arr[i], "suite", path), path + ".suite");
      for (const char* key : {"weights", "windows"}) {
        if (!arr[i].contains(key)) continue;
        const json& ids = arr[i].at(key);
        expect_array(ids, path + "." + key);
        auto& out = std::string(key) == "weights" ? r.weights : r.windows;
        for (std::size_t j = 0; j < ids.size(); ++j)
          out.push_back(get_string(ids[j], index_path(path + "." + key, j)));
      }
    }
    if (std::find(names.begin(), names.end(), r.suite) == names.end())
      throw ConfigError(arr[i].is_string() ? path : path + ".suite", "unknown suite '" + r.suite + "'");
    if (std::any_of(c.experiments.begin(), c.experiments.end(), [&](const SuiteRequest& o) { return o.suite == r.suite; }))
      throw ConfigError(path, "suite '" + r.suite + "' listed twice");
    c.experiments.push_back(std::move(r));
  }
}

// Fills modspace references and checks that every referenced id exists.
void resolve_references(ExperimentConfig& c) {
  for (std::size_t i = 0; i < c.experiments.size(); ++i) {
    SuiteRequest& r = c.experiments[i];
    const std::string path = index_path("experiments", i);
    if (r.suite != "modspace") {
      if (!r.weights.empty() || !r.windows.empty())
        throw ConfigError(path, "weights and windows are only read by the modspace suite");
      continue;
    }
    if (r.weights.empty())
      for (const auto& w : c.weights) r.weights.push_back(w.id);
    if (r.windows.empty())
      for (const auto& w : c.windows) r.windows.push_back(w.id);
    for (std::size_t j = 0; j < r.weights.size(); ++j)
      if (std::none_of(c.weights.begin(), c.weights.end(), [&](const WeightSpec& w) { return w.id == r.weights[j]; }))
        throw ConfigError(index_path(path + ".weights", j), "unknown weight id '" + r.weights[j] + "'");
    for (std::size_t j = 0; j < r.windows.size(); ++j)
      if (std::none_of(c.windows.begin(), c.windows.end(), [&](const WindowSpec& w) { return w.id == r.windows[j]; }))
        throw ConfigError(index_path(path + ".windows", j), "unknown window id '" + r.windows[j] + "'");
    if (r.weights.empty()) throw ConfigError(path + ".weights", "modspace needs at least one weight");
    if (r.windows.size() != 2) throw ConfigError(path + ".windows", "modspace compares exactly two windows");
  }
}

}  // namespace

PhaseGrid ExperimentConfig::grid() const {
  if (mode == "custom") return make_grid(N, d, CustomSpacing{*spacing});
  return make_grid(N, d);
}

const WeightSpec& ExperimentConfig::weight(const std::string& wid) const {
  for (const auto& w : weights)
    if (w.id == wid) return w;
  throw std::out_of_range("unknown weight id " + wid);
}

const WindowSpec& ExperimentConfig::window(const std::string& wid) const {
  for (const auto& w : windows)
    if (w.id == wid) return w;
  throw std::out_of_range("unknown window id " + wid);
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.weights = {{"bracket1", "bracket", {{"t", 1.0}}},
               {"bracket2", "bracket", {{"t", 2.0}}},
               {"subexp", "subexp", {{"r", 0.3}, {"s", 2.0}}}};
  c.windows = {{"gauss1", 1.0}, {"gauss15", 1.5}};
  for (const auto& s : suite_names()) c.experiments.push_back({s, {}, {}});
  resolve_references(c);
  return c;
}

ExperimentConfig parse_config(const std::string& json_text, const std::string& id) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("not valid JSON: ") + e.what());
  }
  expect_object(doc, "<document>");
  reject_unknown(doc, {"id", "grid", "weights", "windows", "ensembles", "tolerances", "experiments"}, "<document>");
  ExperimentConfig c = default_config();
  c.id = doc.contains("id") ? get_string(doc.at("id"), "id") : id;
  if (doc.contains("grid")) parse_grid(doc.at("grid"), c);
  if (doc.contains("weights")) parse_weights(doc.at("weights"), c);
  if (doc.contains("windows")) parse_windows(doc.at("windows"), c);
  if (doc.contains("ensembles")) parse_ensembles(doc.at("ensembles"), c);
  if (doc.contains("tolerances")) parse_tolerances(doc.at("tolerances"), c);
  if (doc.contains("experiments")) {
    parse_experiments(doc.at("experiments"), c);
  } else {
    for (auto& r : c.experiments) r.weights.clear(), r.windows.clear();
  }
  resolve_references(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::filesystem::path(path).stem().string());
}

Weight make_weight(const WeightSpec& spec) {
  auto get = [&](const char* key, double fallback) {
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
  };
  if (spec.kind == "bracket") return bracket_power(get("t", 1.0));
  if (spec.kind == "subexp") return subexp(get("r", 0.0), get("s", 1.0), get("every_rate", 0.0) != 0.0);
  if (spec.kind == "constant") return constant_weight(get("c", 1.0));
  throw std::invalid_argument("unknown weight kind " + spec.kind);
}

}  // namespace phasecalc

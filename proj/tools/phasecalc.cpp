// phasecalc run <config.json> [--suite NAME] [--out DIR] [--svg]
//
// Exit codes: 0 every check passed, 1 a tolerance check failed, 2 invalid
// configuration or command line, 3 runtime error.
#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phasecalc/experiments.hpp"
#include "phasecalc/io.hpp"
#include "phasecalc/svg.hpp"

using namespace phasecalc;
namespace fs = std::filesystem;

namespace {

enum Exit { kPass = 0, kToleranceFailure = 1, kConfigError = 2, kRuntimeError = 3 };

std::vector<SuiteRequest> select(const ExperimentConfig& config, const std::string& suite) {
  if (suite.empty()) return config.experiments;
  for (const auto& r : config.experiments)
    if (r.suite == suite) return {r};
  throw ConfigError("--suite", "suite '" + suite + "' is not listed in the configuration's experiments");
}

int run(const std::string& config_path, const std::string& suite, const fs::path& out, bool svg) {
  ExperimentConfig config;
  std::vector<SuiteRequest> requests;
  try {
    config = load_config(config_path);
    requests = select(config, suite);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  }

  std::vector<SuiteResult> results;
  try {
    fs::create_directories(out);
    RunOptions options;
    options.figures = svg;
    for (const auto& r : requests) {
      results.push_back(run_suite(r, config, options));
      const SuiteResult& s = results.back();
      const auto failed = std::count_if(s.checks.begin(), s.checks.end(), [](const Check& c) { return !c.pass; });
      std::printf("%-9s %s  %zu checks, %ld failed\n", s.suite.c_str(), s.pass() ? "PASS" : "FAIL", s.checks.size(),
                  static_cast<long>(failed));
      for (const auto& c : s.checks)
        if (!c.pass)
          std::printf("  FAIL %s: %.6g %s %.6g\n", c.name.c_str(), c.measured, c.relation.c_str(), c.threshold);
      std::fflush(stdout);
    }
    for (const auto& s : results) {
      write_text(out / (s.suite + ".csv"), suite_csv(s));
      for (const auto& f : s.figures) write_text(out / (f.name + ".svg"), f.svg);
      for (const auto& d : s.dumps) write_dump(out / d.name, d.values, d.meta);
    }
    write_text(out / "report.json", report_json(config, results));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime error: %s\n", e.what());
    return kRuntimeError;
  }

  const bool pass = std::all_of(results.begin(), results.end(), [](const SuiteResult& s) { return s.pass(); });
  return pass ? kPass : kToleranceFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phasecalc experiment runner"};
  app.require_subcommand(1);
  CLI::App* cmd = app.add_subcommand("run", "run the suites listed in a configuration");
  std::string config_path, suite, out = ".";
  bool svg = false;
  cmd->add_option("config", config_path, "configuration JSON")->required();
  cmd->add_option("--suite", suite, "run only this suite")->check(CLI::IsMember(suite_names()));
  cmd->add_option("--out", out, "output directory");
  cmd->add_flag("--svg", svg, "write SVG figures");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }
  return run(config_path, suite, out, svg);
}

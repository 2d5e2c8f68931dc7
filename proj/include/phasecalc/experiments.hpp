#ifndef PHASECALC_EXPERIMENTS_HPP
#define PHASECALC_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "phasecalc/io.hpp"
#include "phasecalc/weights.hpp"

namespace phasecalc {

/// Invalid configuration. `field` is a path such as "weights[1].kind".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct WeightSpec {
  std::string id;
  std::string kind;  // "bracket", "subexp", "constant"
  std::map<std::string, double> params;
};

struct WindowSpec {
  std::string id;
  double width = 1.0;  // Gaussian window width
};

struct EnsembleSpec {
  int hermite_count = 6;
  int random_coherent_count = 4;
  std::uint64_t seed = 7;
};

struct Tolerances {
  double route_tol = 1e-7;
  double group_tol = 1e-6;
  double ratio_K = 10.0;
  double alias_budget = 5e-2;
};

struct SuiteRequest {
  std::string suite;
  std::vector<std::string> weights;  // modspace only: weight ids
  std::vector<std::string> windows;  // modspace only: two window ids
};

struct ExperimentConfig {
  std::string id = "default";
  int N = 48;
  int d = 1;
  std::string mode = "self_dual";
  std::optional<double> spacing;  // mode "custom"
  std::vector<WeightSpec> weights;
  std::vector<WindowSpec> windows;
  EnsembleSpec ensembles;
  Tolerances tolerances;
  std::vector<SuiteRequest> experiments;

  PhaseGrid grid() const;
  const WeightSpec& weight(const std::string& id) const;
  const WindowSpec& window(const std::string& id) const;
};

/// Suites in execution order.
const std::vector<std::string>& suite_names();

/// Criteria covered by each suite.
const std::vector<int>& suite_criteria(const std::string& suite);

/// Suite that owns criterion k (1..12).
const std::string& criterion_suite(int k);

/// Parses and validates a JSON document. Missing sections take the
/// defaults of default_config(); errors name the offending field.
ExperimentConfig parse_config(const std::string& json_text, const std::string& id = "default");
ExperimentConfig load_config(const std::string& path);

/// Grid N = 48, weights <.>, <.>^2 and e^{0.3 |X|^{1/2}}, windows of width 1
/// and 1.5, every suite.
ExperimentConfig default_config();

Weight make_weight(const WeightSpec& spec);

struct Check {
  std::string name;
  std::optional<int> criterion;  // empty for supplementary rows
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation = "<=";   // measured relation threshold must hold
  bool pass = false;
};

/// Builds a check and evaluates its pass flag. NaN never passes.
Check make_check(std::string name, std::optional<int> criterion, double measured, std::string relation,
                 double threshold);

struct Figure {
  std::string name;  // file stem
  std::string svg;
};

struct DumpItem {
  std::string name;  // file stem
  Matrix values;
  DumpMeta meta;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  std::vector<Figure> figures;
  std::vector<DumpItem> dumps;
  bool pass() const;
};

struct RunOptions {
  bool figures = false;
};

/// Runs one suite. Numerical failures become failing rows; exceptions
/// propagate as runtime errors.
SuiteResult run_suite(const SuiteRequest& request, const ExperimentConfig& config, const RunOptions& options = {});

/// Checks of a single acceptance criterion.
std::vector<Check> run_criterion(int k, const ExperimentConfig& config);

/// Version string recorded in reports.
const char* version();

inline constexpr int kReportSchemaVersion = 1;

/// report.json text: {schema_version, experiment, environment, suites}.
/// Contains no timestamps or host data, so identical inputs give identical
/// bytes.
std::string report_json(const ExperimentConfig& config, const std::vector<SuiteResult>& results);

/// CSV with header suite,check,criterion,measured,relation,threshold,pass;
/// floats use 17 significant digits.
std::string suite_csv(const SuiteResult& result);

}  // namespace phasecalc

#endif  // PHASECALC_EXPERIMENTS_HPP

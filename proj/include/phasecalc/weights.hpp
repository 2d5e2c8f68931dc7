#ifndef PHASECALC_WEIGHTS_HPP
#define PHASECALC_WEIGHTS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "phasecalc/grid.hpp"

namespace phasecalc {

/// Claimed weight class. P: polynomially moderate. P0_Es: Gevrey moderate
/// for every rate. P_Es: for some rate. P_E: moderate with respect to some
/// exponential.
enum class WeightClass { P, P0_Es, P_Es, P_E };

std::string to_string(WeightClass c);

struct WeightParams {
  std::optional<double> t;  // polynomial power
  std::optional<double> r;  // growth rate
  std::optional<double> s;  // Gevrey order
};

/// Positive function on phase space, stored through its logarithm so that
/// fast-growing weights can be compared without overflow. Evaluators take
/// X = (x, xi) of any even length.
class Weight {
 public:
  using LogEvaluator = std::function<double(const Eigen::VectorXd&)>;

  Weight(std::string name, LogEvaluator log_eval, WeightClass tag, WeightParams params = {});

  double log_value(const Eigen::VectorXd& X) const { return log_eval_(X); }
  double operator()(const Eigen::VectorXd& X) const { return std::exp(log_eval_(X)); }
  double operator()(double x, double xi) const { return (*this)(Eigen::Vector2d(x, xi)); }

  /// Values on a d = 1 phase grid; rows index x, columns xi.
  RealMatrix sample(const PhaseGrid& grid) const;

  const std::string& name() const noexcept { return name_; }
  WeightClass tag() const noexcept { return tag_; }
  const WeightParams& params() const noexcept { return params_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

 private:
  std::string name_;
  LogEvaluator log_eval_;
  WeightClass tag_;
  WeightParams params_;
  std::vector<std::string> warnings_;
};

/// <X>^t = (1 + |X|^2)^{t/2}.
Weight bracket_power(double t);
/// e^{r |X|^{1/s}}; s < 1 is accepted with a recorded warning, r < 0 throws.
/// The tag is P_Es unless `every_rate` is set, which tags P0_Es.
Weight subexp(double r, double s, bool every_rate = false);
Weight product(const Weight& w1, const Weight& w2);
Weight reciprocal(const Weight& w);
Weight power(const Weight& w, double p);
Weight constant_weight(double c = 1.0);

/// exp(chi(x) chi(xi) log w) with the central cutoff of the grid: equal to w
/// on the central half, 1 near the boundary.
Weight windowed(const Weight& w, const PhaseGrid& grid);

/// Pairs (x, y) at which moderation inequalities are tested.
struct SampleSet {
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
  std::uint64_t seed = 0;
  double max_pair_norm = 0.0;
};

inline constexpr std::uint64_t kDefaultSampleSeed = 20240917;

/// Central grid-node pairs plus `random_pairs` uniform pairs in [-L, L)^{2d}
/// from a seeded generator; each pair (x, y) is accompanied by (x + y, -y).
/// Central nodes are thinned by a stride when there are more than 1200.
SampleSet standard_sample_set(const PhaseGrid& grid, std::uint64_t seed = kDefaultSampleSeed,
                              int random_pairs = 1000);

/// Pairs on fixed and seeded directions with radii 0 and geometric radii
/// up to r_max, for growth comparisons far beyond the grid.
SampleSet radial_scan_sample_set(int phase_dim, double r_max, std::uint64_t seed = kDefaultSampleSeed,
                                 int radii = 48, int random_directions = 4);

struct ModerationCertificate {
  double C_hat = 0.0;    // max w(x+y) / (w(x) v(y))
  double C_lower = 0.0;  // max w(x) / (w(x+y) v(y))
  bool lower_chain_holds = false;
  std::size_t sample_count = 0;
  double max_pair_norm = 0.0;
  std::uint64_t seed = 0;
};

struct ModerationOptions {
  bool check_submultiplicative = true;
  double slack = 1e-12;
};

/// Best sampled constant in w(x+y) <= C w(x) v(y), after checking v >= 1,
/// v even and (optionally) v submultiplicative on the samples. The lower
/// chain C^{-1} w(x) / v(y) <= w(x+y) is verified with the same constant.
ModerationCertificate certify_moderate(const Weight& w, const Weight& v, const SampleSet& samples,
                                       ModerationOptions options = {});

struct GevreyRateResult {
  double r = 0.0;
  double log_C = 0.0;       // log of the sampled constant over all pairs
  double log_C_half = 0.0;  // over pairs with |x|, |y| <= r_max / 2
  bool pass = false;        // constant saturated before r_max / 2
};

/// For each rate r, the sampled constant in w(x+y) <= C w(x) e^{r |y|^{1/s}}.
/// A rate passes when the constant has stopped growing: C(r_max) <=
/// C(r_max / 2) (1 + 1e-9). Use radial_scan_sample_set to reach far out.
std::vector<GevreyRateResult> certify_gevrey_moderate(const Weight& w, double s, const std::vector<double>& rates,
                                                      const SampleSet& samples);

/// P0_Es claims need every listed rate to pass, P_Es claims at least one.
bool gevrey_claim_holds(const std::vector<GevreyRateResult>& results, WeightClass claim);

struct MollifiedWeight {
  Weight weight;
  RealMatrix samples;  // w0 on the grid
  double c1 = 0.0;     // min w0 / w over nodes
  double c2 = 0.0;     // max w0 / w over nodes
};

/// w0 = w * bump for a nonnegative bump on a d = 1 phase grid, normalized
/// to unit integral. Grid values come from an FFT convolution on a doubled
/// grid (no wrap); off-grid values from direct quadrature.
MollifiedWeight mollify(const Weight& w, const SampledSymbol& bump, double alias_budget = kDefaultAliasBudget);

/// 1 + |log w|.
Weight log_weight(const Weight& w);
/// Moderation constant carried to log weights: max(1, 1 + log C).
double log_weight_constant(double C);

}  // namespace phasecalc

#endif  // PHASECALC_WEIGHTS_HPP

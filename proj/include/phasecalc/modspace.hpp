#ifndef PHASECALC_MODSPACE_HPP
#define PHASECALC_MODSPACE_HPP

#include <limits>
#include <string>
#include <vector>

#include "phasecalc/ensembles.hpp"
#include "phasecalc/weights.hpp"

namespace phasecalc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// x_then_xi: inner L^p over x, outer L^q over xi. xi_then_x swaps roles.
enum class NormOrder { x_then_xi, xi_then_x };

struct MixedNormSpec {
  double p = 2.0;
  double q = 2.0;
  NormOrder order = NormOrder::x_then_xi;
  /// Quasi-norm exponent min(1, p, q).
  double r() const { return std::min({1.0, p, q}); }
};

std::string to_string(const MixedNormSpec& spec);

/// Smallest exponent accepted by modulation_norm.
inline constexpr double kMinExponent = 0.1;

/// (h sum_xi (h sum_x |F w|^p)^{q/p})^{1/q}, or its transpose; an infinite
/// exponent replaces that sum by a max with no h factor.
double mixed_norm(const Matrix& F, const RealMatrix& w, double h, const MixedNormSpec& spec);

struct ModNormResult {
  double value = 0.0;
  std::string window_id;
  std::string weight_id;
  MixedNormSpec spec;
};

/// mixed_norm(V_phi f, w) with phi rescaled to unit L2 norm.
ModNormResult modulation_norm(const SampledFunction& f, const SampledFunction& phi, const Weight& w,
                              const MixedNormSpec& spec, std::optional<double> alias_budget = kDefaultAliasBudget,
                              const std::string& window_id = "phi");
/// Same, with w already sampled on the grid.
double modulation_norm(const SampledFunction& f, const SampledFunction& phi, const RealMatrix& w,
                       const MixedNormSpec& spec, std::optional<double> alias_budget = kDefaultAliasBudget);

struct RatioStats {
  std::vector<std::string> ids;
  std::vector<double> ratios;
  std::vector<std::string> skipped;
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
  double K = 10.0;
  /// max / min.
  double spread() const { return min > 0.0 ? max / min : kInf; }
  bool pass() const { return !ratios.empty() && spread() <= K; }
};

/// Fills min, max and median from ratios (sorted copy).
void summarize(RatioStats& stats);

/// Ratios of modulation norms under two windows over an ensemble. Zero
/// members are skipped.
RatioStats window_equivalence_report(const std::vector<EnsembleMember>& ensemble, const SampledFunction& phi1,
                                     const SampledFunction& phi2, const Weight& w, const MixedNormSpec& spec,
                                     double K = 10.0, std::optional<double> alias_budget = kDefaultAliasBudget);

/// Grid-aligned time-frequency shift M_{k h} T_{m h} f, wrapping periodically.
SampledFunction tf_shift(const SampledFunction& f, int m, int k);

}  // namespace phasecalc

#endif  // PHASECALC_MODSPACE_HPP

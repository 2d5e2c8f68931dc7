#ifndef PHASECALC_SYMGROUP_HPP
#define PHASECALC_SYMGROUP_HPP

#include <optional>

#include "phasecalc/modspace.hpp"
#include "phasecalc/quantize.hpp"
#include "phasecalc/weylalg.hpp"

namespace phasecalc {

/// Data of d_t a = (b + log theta) # a, a(0) = a0. Unbounded weights should
/// be passed through windowed() so that log theta is a torus symbol.
struct EvolutionProblem {
  PhaseGrid grid;
  Weight theta;
  SampledSymbol b;
  SampledSymbol a0;
  double t_max = 1.0;

  EvolutionProblem(PhaseGrid g, Weight th, SampledSymbol b_sym, SampledSymbol a0_sym, double tmax = 1.0);
  /// b = 0, a0 = 1.
  static EvolutionProblem group(const Weight& theta, const PhaseGrid& grid, double tmax = 1.0);

  /// Samples of b + log theta.
  Matrix generator() const;
};

enum class EvolutionMethod { matrix_exp, rk4 };
const char* to_string(EvolutionMethod m);

struct GroupElement {
  double t = 0.0;
  SampledSymbol symbol;
  EvolutionMethod method = EvolutionMethod::matrix_exp;
  std::optional<double> route_residual;  // against the other method, central nodes
  std::optional<double> ode_residual;    // centred time difference at t
};

/// Largest ||t C||_2 accepted before the exponential is refused.
inline constexpr double kMaxExponentNorm = 40.0;
/// Fixed RK4 step.
inline constexpr double kRk4Step = 1.0 / 64.0;

/// exp(M) by scaling and squaring: M / 2^s with ||M / 2^s||_2 <= 0.5 is
/// exponentiated by Eigen's matrix function, then squared s times.
Matrix matrix_exponential(const Matrix& M);

GroupElement evolve(const EvolutionProblem& problem, double t, EvolutionMethod method = EvolutionMethod::matrix_exp);

/// evolve plus route agreement and the left ODE residual.
GroupElement evolve_checked(const EvolutionProblem& problem, double t);

/// Relative central residual of d_t a against (b + log theta) # a (left) or
/// a # (b + log theta) (right), with a fourth-order centred difference.
RouteResidual ode_residual(const EvolutionProblem& problem, double t, bool right_sided = false, double dt = 1e-2);

/// a(t1) # a(t2) against a(t1 + t2) on central nodes. Requires a0 = 1.
RouteResidual group_law_check(const EvolutionProblem& problem, double t1, double t2);

struct InversePair {
  SampledSymbol a;  // a(1)
  SampledSymbol b;  // a(-1)
  double ab_residual = 0.0;  // max central |a # b - 1|
  double ba_residual = 0.0;  // max central |b # a - 1|
};

/// Group with theta = w0, b = 0, a0 = 1, evaluated at t = +-1.
InversePair inverse_pair(const Weight& w0, const PhaseGrid& grid);

struct LiftingReport {
  MixedNormSpec spec;
  RatioStats stats;
  double round_trip = 0.0;  // max relative l2 error of Op(b) Op(a) f - f
};

/// Ratios ||Op^w(a) f||_{M^{p,q}(w_out)} / ||f||_{M^{p,q}(w_in)} with a
/// normalized Gaussian window. `inverse` supplies the round trip.
LiftingReport lifting_report(const SampledSymbol& a, const SampledSymbol& inverse, const RealMatrix& w_in,
                             const RealMatrix& w_out, const MixedNormSpec& spec,
                             const std::vector<EnsembleMember>& ensemble, double K = 10.0,
                             std::optional<double> alias_budget = kDefaultAliasBudget);

/// lifting_report with w_in = omega and w_out = omega / w0.
LiftingReport lifting_report(const InversePair& pair, const Weight& omega, const Weight& w0,
                             const MixedNormSpec& spec, const std::vector<EnsembleMember>& ensemble, double K = 10.0,
                             std::optional<double> alias_budget = kDefaultAliasBudget);

/// The same report for b : M(omega / w0) -> M(omega).
LiftingReport lifting_report_swapped(const InversePair& pair, const Weight& omega, const Weight& w0,
                                     const MixedNormSpec& spec, const std::vector<EnsembleMember>& ensemble,
                                     double K = 10.0, std::optional<double> alias_budget = kDefaultAliasBudget);

}  // namespace phasecalc

#endif  // PHASECALC_SYMGROUP_HPP

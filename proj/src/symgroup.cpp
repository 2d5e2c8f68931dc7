#include "phasecalc/symgroup.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "phasecalc/ensembles.hpp"

namespace phasecalc {

EvolutionProblem::EvolutionProblem(PhaseGrid g, Weight th, SampledSymbol b_sym, SampledSymbol a0_sym, double tmax)
    : grid(std::move(g)), theta(std::move(th)), b(std::move(b_sym)), a0(std::move(a0_sym)), t_max(tmax) {
  if (grid.dim() != 1) throw std::invalid_argument("EvolutionProblem: d = 1 only");
  if (!(b.grid() == grid) || !(a0.grid() == grid)) throw std::invalid_argument("EvolutionProblem: grid mismatch");
  if (!(t_max > 0.0)) throw std::invalid_argument("EvolutionProblem: t_max must be positive");
  const RealMatrix lt = generator().real();
  if (!lt.allFinite()) throw std::invalid_argument("EvolutionProblem: theta must be positive and finite on the grid");
}

EvolutionProblem EvolutionProblem::group(const Weight& theta, const PhaseGrid& grid, double tmax) {
  return EvolutionProblem(grid, theta, SampledSymbol::constant(grid, 0.0), SampledSymbol::constant(grid, 1.0), tmax);
}

Matrix EvolutionProblem::generator() const {
  const Grid1D& g = grid.axis();
  Matrix c(g.size(), g.size());
  Eigen::VectorXd X(2);
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) {
      X << g.node(i), g.node(j);
      c(i, j) = b.values()(i, j) + theta.log_value(X);
    }
  return c;
}

const char* to_string(EvolutionMethod m) { return m == EvolutionMethod::matrix_exp ? "matrix_exp" : "rk4"; }

Matrix matrix_exponential(const Matrix& M) {
  const double norm = Eigen::JacobiSVD<Matrix>(M).singularValues()(0);
  if (!std::isfinite(norm) || norm > kMaxExponentNorm)
    throw std::overflow_error("matrix exponential: ||t C||_2 = " + std::to_string(norm) +
                              " is too large; use a smaller t or a windowed weight");
  int s = 0;
  while (norm / std::ldexp(1.0, s) > 0.5) ++s;
  Matrix E = (M / std::ldexp(1.0, s)).exp();
  for (int k = 0; k < s; ++k) E = E * E;
  return E;
}

namespace {

void check_time(const EvolutionProblem& p, double t) {
  if (!(std::abs(t) <= p.t_max + 1e-15))
    throw std::invalid_argument("evolve: |t| = " + std::to_string(std::abs(t)) + " exceeds t_max");
}

Matrix evolve_exp(const EvolutionProblem& p, double t) {
  const Matrix C = op_entries(p.generator(), 0.5);
  const Matrix E = matrix_exponential(Matrix(t * C));
  return symbol_of(Matrix(E * op_entries(p.a0.values(), 0.5)), 0.5);
}

Matrix evolve_rk4(const EvolutionProblem& p, double t) {
  const Matrix c = p.generator();
  const int steps = static_cast<int>(std::ceil(std::abs(t) / kRk4Step - 1e-12));
  const double dt = steps == 0 ? 0.0 : t / steps;
  Matrix a = p.a0.values();
  auto f = [&](const Matrix& x) { return weyl_product(c, x, 0.5); };
  for (int k = 0; k < steps; ++k) {
    const Matrix k1 = f(a);
    const Matrix k2 = f(a + 0.5 * dt * k1);
    const Matrix k3 = f(a + 0.5 * dt * k2);
    const Matrix k4 = f(a + dt * k3);
    a += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return a;
}

Matrix evolve_values(const EvolutionProblem& p, double t, EvolutionMethod m) {
  if (t == 0.0) return p.a0.values();
  return m == EvolutionMethod::matrix_exp ? evolve_exp(p, t) : evolve_rk4(p, t);
}

double central_max_abs(const Matrix& a, const PhaseGrid& grid) {
  const auto mask = central_mask(grid);
  double m = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (mask(i, j)) m = std::max(m, std::abs(a(i, j)));
  return m;
}

}  // namespace

GroupElement evolve(const EvolutionProblem& problem, double t, EvolutionMethod method) {
  check_time(problem, t);
  return GroupElement{t, SampledSymbol(problem.grid, evolve_values(problem, t, method)), method, {}, {}};
}

GroupElement evolve_checked(const EvolutionProblem& problem, double t) {
  GroupElement e = evolve(problem, t, EvolutionMethod::matrix_exp);
  e.route_residual = central_residual(e.symbol.values(), evolve_values(problem, t, EvolutionMethod::rk4)).residual;
  e.ode_residual = ode_residual(problem, t).residual;
  return e;
}

RouteResidual ode_residual(const EvolutionProblem& problem, double t, bool right_sided, double dt) {
  const Matrix c = problem.generator();
  const Matrix C = op_entries(c, 0.5);
  const Matrix A0 = op_entries(problem.a0.values(), 0.5);
  auto op_at = [&](double s) { return Matrix(matrix_exponential(Matrix(s * C)) * A0); };
  const Matrix d = (-op_at(t + 2 * dt) + 8.0 * op_at(t + dt) - 8.0 * op_at(t - dt) + op_at(t - 2 * dt)) / (12.0 * dt);
  const Matrix At = op_at(t);
  const Matrix rhs = right_sided ? Matrix(At * C) : Matrix(C * At);
  return central_residual(symbol_of(d, 0.5), symbol_of(rhs, 0.5));
}

RouteResidual group_law_check(const EvolutionProblem& problem, double t1, double t2) {
  const Matrix& a0 = problem.a0.values();
  if ((a0.array() - Complex(1.0)).abs().maxCoeff() != 0.0)
    throw std::invalid_argument("group_law_check: requires a0 = 1");
  const Matrix lhs = weyl_product(evolve_values(problem, t1, EvolutionMethod::matrix_exp),
                                  evolve_values(problem, t2, EvolutionMethod::matrix_exp), 0.5);
  return central_residual(lhs, evolve_values(problem, t1 + t2, EvolutionMethod::matrix_exp));
}

InversePair inverse_pair(const Weight& w0, const PhaseGrid& grid) {
  const EvolutionProblem p = EvolutionProblem::group(w0, grid);
  InversePair out{evolve(p, 1.0).symbol, evolve(p, -1.0).symbol, 0.0, 0.0};
  const Matrix one = Matrix::Ones(grid.axis().size(), grid.axis().size());
  out.ab_residual = central_max_abs(weyl_product(out.a.values(), out.b.values(), 0.5) - one, grid);
  out.ba_residual = central_max_abs(weyl_product(out.b.values(), out.a.values(), 0.5) - one, grid);
  return out;
}

LiftingReport lifting_report(const SampledSymbol& a, const SampledSymbol& inverse, const RealMatrix& w_in,
                             const RealMatrix& w_out, const MixedNormSpec& spec,
                             const std::vector<EnsembleMember>& ensemble, double K,
                             std::optional<double> alias_budget) {
  if (ensemble.empty()) throw std::invalid_argument("lifting_report: empty ensemble");
  const Grid1D& g = a.axis();
  const SampledFunction phi = gaussian_window(g);
  const OperatorMatrix Op = op_matrix(a, 0.5);
  const OperatorMatrix Inv = op_matrix(inverse, 0.5);
  LiftingReport rep;
  rep.spec = spec;
  rep.stats.K = K;
  for (const auto& m : ensemble) {
    const double fn = m.f.values().norm();
    if (fn == 0.0) {
      rep.stats.skipped.push_back(m.id);
      continue;
    }
    const SampledFunction out = Op.apply(m.f);
    const double num = modulation_norm(out, phi, w_out, spec, std::nullopt);
    const double den = modulation_norm(m.f, phi, w_in, spec, alias_budget);
    rep.stats.ids.push_back(m.id);
    rep.stats.ratios.push_back(num / den);
    rep.round_trip = std::max(rep.round_trip, (Inv.apply(out.values()) - m.f.values()).norm() / fn);
  }
  summarize(rep.stats);
  return rep;
}

LiftingReport lifting_report(const InversePair& pair, const Weight& omega, const Weight& w0,
                             const MixedNormSpec& spec, const std::vector<EnsembleMember>& ensemble, double K,
                             std::optional<double> alias_budget) {
  const PhaseGrid& grid = pair.a.grid();
  const RealMatrix w = omega.sample(grid);
  return lifting_report(pair.a, pair.b, w, RealMatrix(w.cwiseQuotient(w0.sample(grid))), spec, ensemble, K,
                        alias_budget);
}

LiftingReport lifting_report_swapped(const InversePair& pair, const Weight& omega, const Weight& w0,
                                     const MixedNormSpec& spec, const std::vector<EnsembleMember>& ensemble,
                                     double K, std::optional<double> alias_budget) {
  const PhaseGrid& grid = pair.a.grid();
  const RealMatrix w = omega.sample(grid);
  return lifting_report(pair.b, pair.a, RealMatrix(w.cwiseQuotient(w0.sample(grid))), w, spec, ensemble, K,
                        alias_budget);
}

}  // namespace phasecalc

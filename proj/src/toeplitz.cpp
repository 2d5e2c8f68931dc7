#include "phasecalc/toeplitz.hpp"

#include "phasecalc/parallel.hpp"
#include "phasecalc/tfa.hpp"

namespace phasecalc {

GaussianPhaseWeight::GaussianPhaseWeight(std::array<double, 2> l, double amplitude) : lambda(l), C(amplitude) {
  if (!(l[0] > 0.0 && l[1] > 0.0)) throw std::invalid_argument("Gaussian phase weight needs lambda1, lambda2 > 0");
}

Matrix GaussianPhaseWeight::sample(const Grid1D& g) const {
  Matrix out(g.size(), g.size());
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) out(i, j) = (*this)(g.node(i), g.node(j));
  return out;
}

OperatorMatrix toeplitz_stft_form(const SampledSymbol& a, const SampledFunction& phi) {
  const Grid1D& g = phi.grid();
  if (!(a.axis() == g)) throw std::invalid_argument("toeplitz_stft_form: grid mismatch");
  const int n = g.size();
  // Column k of B is V_phi(delta_k) flattened; M = h B^H diag(a) B.
  Matrix B(static_cast<Index>(n) * n, n);
  parallel_for(n, [&](long k) {
    Vector delta = Vector::Zero(n);
    delta(k) = 1.0;
    const Matrix V = stft(SampledFunction(g, delta), phi, std::nullopt).values();
    B.col(k) = Eigen::Map<const Vector>(V.data(), V.size());
  });
  const Vector av = Eigen::Map<const Vector>(a.values().data(), a.values().size());
  const Matrix M = g.spacing() * (B.adjoint() * av.asDiagonal() * B);
  return OperatorMatrix(g, M, 0.5);
}

OperatorMatrix toeplitz_weyl_form(const SampledSymbol& a, const SampledFunction& phi) {
  const Grid1D& g = phi.grid();
  if (!(a.axis() == g)) throw std::invalid_argument("toeplitz_weyl_form: grid mismatch");
  const Matrix W = wigner(phi, phi, 0.5).values();
  const Matrix sym = periodic_convolve(a.values(), W, g.spacing()) / std::sqrt(2.0 * kPi);
  return OperatorMatrix(g, op_entries(sym, 0.5), 0.5);
}

SampledFunction GaussianSplit::window(const Grid1D& g) const {
  const double m = mu[0];
  return SampledFunction(g, [m](double x) { return Complex(std::exp(-0.5 * m * x * x)); });
}

GaussianSplit gaussian_split(std::array<double, 2> lambda, const PhaseGrid& grid) {
  if (!(lambda[0] > 0.0 && lambda[1] > 0.0)) throw std::invalid_argument("gaussian_split: lambda must be positive");
  if (lambda[0] * lambda[1] >= 1.0)
    throw std::invalid_argument("gaussian_split: requires lambda1 * lambda2 < 1");
  GaussianSplit s;
  s.lambda = lambda;
  const double root = std::sqrt(lambda[0] * lambda[1]);
  double amp = 1.0;
  for (int i = 0; i < 2; ++i) {
    s.mu[i] = lambda[i] / root;
    s.nu[i] = lambda[i] * s.mu[i] / (s.mu[i] - lambda[i]);
    amp *= std::sqrt((s.mu[i] + s.nu[i]) / kPi);
  }
  s.C_nu = amp;
  s.c = std::sqrt(s.mu[0] / 2.0);

  const Grid1D& g = grid.axis();
  const Matrix conv = periodic_convolve(s.Phi_mu().sample(g), s.Phi_nu().sample(g), g.spacing());
  s.factorization_residual = (conv - s.Phi_lambda().sample(g)).cwiseAbs().maxCoeff();

  const SampledFunction phi = s.window(g);
  const Matrix W = wigner(phi, phi, 0.5).values();
  const Matrix P = s.Phi_mu().sample(g);
  s.c_measured = std::real(W.cwiseProduct(P.conjugate()).sum() / W.squaredNorm());
  return s;
}

IdentityResidual toeplitz_weyl_symbol_identity(std::array<double, 2> lambda, const Weight& w0,
                                               const PhaseGrid& grid) {
  IdentityResidual out;
  out.split = gaussian_split(lambda, grid);
  const Grid1D& g = grid.axis();
  const double h = g.spacing();
  const Matrix w = w0.sample(grid).cast<Complex>();
  const Matrix weyl_symbol = periodic_convolve(w, out.split.Phi_lambda().sample(g), h);
  const Matrix toep_symbol = periodic_convolve(w, out.split.Phi_nu().sample(g), h);
  const Matrix lhs = op_entries(weyl_symbol, 0.5) / (std::sqrt(2.0 * kPi) * out.split.c);
  const OperatorMatrix rhs = toeplitz_stft_form(SampledSymbol(grid, toep_symbol), out.split.window(g));
  out.scale = rhs.operator_norm_2();
  out.residual = OperatorMatrix(g, lhs - rhs.entries(), 0.5).operator_norm_2() / out.scale;
  return out;
}

RatioStats toeplitz_norm_equivalence(const Weight& w, const SampledFunction& phi,
                                     const std::vector<EnsembleMember>& ensemble, double K,
                                     std::optional<double> alias_budget) {
  if (ensemble.empty()) throw std::invalid_argument("toeplitz_norm_equivalence: empty ensemble");
  const Grid1D& g = phi.grid();
  const PhaseGrid pg(g, 1);
  const double n = phi.l2_norm();
  const SampledFunction unit(g, Vector(phi.values() / n));
  const OperatorMatrix T = toeplitz(SampledSymbol(pg, Matrix(w.sample(pg).cast<Complex>())), unit);
  const Weight theta = power(w, 0.5);
  const RealMatrix up = theta.sample(pg), down = reciprocal(theta).sample(pg);
  const MixedNormSpec spec{2, 2};
  RatioStats stats;
  stats.K = K;
  for (const auto& m : ensemble) {
    if (m.f.values().cwiseAbs().maxCoeff() == 0.0) {
      stats.skipped.push_back(m.id);
      continue;
    }
    const double num = modulation_norm(T.apply(m.f), unit, down, spec, std::nullopt);
    const double den = modulation_norm(m.f, unit, up, spec, alias_budget);
    stats.ids.push_back(m.id);
    stats.ratios.push_back(num / den);
  }
  summarize(stats);
  return stats;
}

double restricted_min_singular_value(const OperatorMatrix& M, int count) {
  const Grid1D& g = M.grid();
  Matrix H(g.size(), count);
  for (int k = 0; k < count; ++k)
    for (int i = 0; i < g.size(); ++i) H(i, k) = hermite_function(k, g.node(i));
  const Eigen::HouseholderQR<Matrix> qr(H);
  const Matrix Q = qr.householderQ() * Matrix::Identity(g.size(), count);
  Eigen::JacobiSVD<Matrix> svd(M.entries() * Q);
  return svd.singularValues()(count - 1);
}

}  // namespace phasecalc

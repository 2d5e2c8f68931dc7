#ifndef PHASECALC_TOEPLITZ_HPP
#define PHASECALC_TOEPLITZ_HPP

#include <array>

#include "phasecalc/modspace.hpp"
#include "phasecalc/quantize.hpp"

namespace phasecalc {

/// Phi_lambda(x, xi) = C exp(-(lambda1 x^2 + lambda2 xi^2)).
struct GaussianPhaseWeight {
  std::array<double, 2> lambda{1.0, 1.0};
  double C = 1.0;

  GaussianPhaseWeight(std::array<double, 2> l, double amplitude = 1.0);
  double operator()(double x, double xi) const {
    return C * std::exp(-(lambda[0] * x * x + lambda[1] * xi * xi));
  }
  Matrix sample(const Grid1D& g) const;
};

/// Tp_phi(a) from the sesquilinear form (Mf, g) = int a V_phi f conj(V_phi g),
/// assembled column by column from the STFTs of grid delta functions. The
/// window is used as given.
OperatorMatrix toeplitz_stft_form(const SampledSymbol& a, const SampledFunction& phi);

/// Tp_phi(a) = (2 pi)^{-1/2} Op^w(a * W_{phi,phi}) with a periodic FFT
/// convolution.
OperatorMatrix toeplitz_weyl_form(const SampledSymbol& a, const SampledFunction& phi);

/// Default assembly route (the Weyl form).
inline OperatorMatrix toeplitz(const SampledSymbol& a, const SampledFunction& phi) {
  return toeplitz_weyl_form(a, phi);
}

struct GaussianSplit {
  std::array<double, 2> lambda{}, mu{}, nu{};
  double C_nu = 0.0;                 // amplitude making Phi_lambda = Phi_mu * Phi_nu
  double c = 0.0;                    // Phi_mu = c W(phi, phi) in closed form
  double c_measured = 0.0;           // least-squares ratio against wigner()
  double factorization_residual = 0.0;
  GaussianPhaseWeight Phi_lambda() const { return {lambda, 1.0}; }
  GaussianPhaseWeight Phi_mu() const { return {mu, 1.0}; }
  GaussianPhaseWeight Phi_nu() const { return {nu, C_nu}; }
  /// phi(x) = exp(-mu1 x^2 / 2), unnormalized.
  SampledFunction window(const Grid1D& g) const;
};

/// mu_i = lambda_i / sqrt(lambda1 lambda2), nu from lambda = mu nu / (mu + nu).
/// Requires lambda1 lambda2 < 1. Checks Phi_lambda = Phi_mu * Phi_nu by FFT
/// convolution on the grid.
GaussianSplit gaussian_split(std::array<double, 2> lambda, const PhaseGrid& grid);

struct IdentityResidual {
  double residual = 0.0;  // spectral-norm difference divided by scale
  double scale = 0.0;     // spectral norm of the Toeplitz side
  GaussianSplit split;
};

/// Op^w(w0 * Phi_lambda) / ((2 pi)^{1/2} c) against Tp_phi(w0 * Phi_nu) in
/// the STFT form.
IdentityResidual toeplitz_weyl_symbol_identity(std::array<double, 2> lambda, const Weight& w0,
                                               const PhaseGrid& grid);

/// ||Tp_phi(w) f||_{M^2(1/theta)} / ||f||_{M^2(theta)} with theta = w^{1/2}
/// over an ensemble; the modulation norms use phi as window.
RatioStats toeplitz_norm_equivalence(const Weight& w, const SampledFunction& phi,
                                     const std::vector<EnsembleMember>& ensemble, double K = 10.0,
                                     std::optional<double> alias_budget = kDefaultAliasBudget);

/// Smallest singular value of M restricted to the span of the first
/// `count` Hermite functions.
double restricted_min_singular_value(const OperatorMatrix& M, int count = 8);

}  // namespace phasecalc

#endif  // PHASECALC_TOEPLITZ_HPP

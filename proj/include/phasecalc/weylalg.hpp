#ifndef PHASECALC_WEYLALG_HPP
#define PHASECALC_WEYLALG_HPP

#include "phasecalc/grid.hpp"

namespace phasecalc {

/// Symbol of Op_A(a) Op_A(b): the matrix route. A = 1/2 gives a # b.
Matrix weyl_product(const Matrix& a, const Matrix& b, double A = 0.5);
SampledSymbol weyl_product(const SampledSymbol& a, const SampledSymbol& b, double A = 0.5);

/// Largest N accepted by the direct twisted convolution.
inline constexpr int kTwistedConvolutionMaxN = 64;

/// Direct quadrature of (2/pi)^{1/2} int a(X - Y) b(Y) e^{2 i sigma(X, Y)} dY
/// with X - Y wrapped periodically. O(N^4).
Matrix twisted_convolution(const Matrix& a, const Matrix& b, double h);
SampledSymbol twisted_convolution(const SampledSymbol& a, const SampledSymbol& b);

/// a-check: a(X) -> a(-X).
Matrix reflect(const Matrix& a);

struct RouteResidual {
  double residual;  // max over central nodes of |lhs - rhs|, divided by scale
  double scale;     // max over central nodes of |lhs|, floored at 1e-300
};

/// Relative central sup distance between two symbols.
RouteResidual central_residual(const Matrix& lhs, const Matrix& rhs);

/// a # b (matrix route) against (2 pi)^{-1/2} a *_sigma (F_sigma b).
RouteResidual product_route_equivalence(const SampledSymbol& a, const SampledSymbol& b);

/// F_sigma(a *_sigma b) against (F_sigma a) *_sigma b and a-check *_sigma (F_sigma b).
/// Returns the larger of the two residuals.
RouteResidual twisted_fourier_identity_check(const SampledSymbol& a, const SampledSymbol& b);

/// F_sigma(a # b) against (2 pi)^{-1/2} (F_sigma a) *_sigma (F_sigma b).
RouteResidual weyl_fourier_identity_check(const SampledSymbol& a, const SampledSymbol& b);

/// x # xi - xi # x against the constant i. The coordinate symbols are
/// cut off smoothly outside the central region, where they equal x and xi.
RouteResidual commutator_check(const PhaseGrid& grid);

}  // namespace phasecalc

#endif  // PHASECALC_WEYLALG_HPP

#ifndef PHASECALC_TFA_HPP
#define PHASECALC_TFA_HPP

#include <optional>

#include "phasecalc/grid.hpp"

namespace phasecalc {

// Index convention shared by every transform in the library: sample k sits
// at node (k - N/2) h, and output index j of a centred DFT sits at the dual
// node (j - N/2) * 2 pi / (N h). On a self-dual grid
//
//   F_j = N^{-1/2} (-1)^{N/2} (-1)^j sum_k (-1)^k f_k exp(-2 pi i j k / N)
//
// equals h (2 pi)^{-1/2} sum_k f(x_k) exp(-i x_k xi_j), the rectangle-rule
// approximation of the unitary Fourier transform.

/// Unitary centred DFT of a length-N vector.
Vector centered_dft(const Vector& f);
/// Inverse of centered_dft, via conj(F(conj F)).
Vector centered_idft(const Vector& F);

/// Centred DFT applied along one axis of a matrix (axis 0: down each column).
Matrix centered_dft(const Matrix& a, int axis);
Matrix centered_idft(const Matrix& a, int axis);

/// Unitary Fourier transform (2 pi)^{-1/2} int f(x) e^{-i x xi} dx.
SampledFunction fourier(const SampledFunction& f);
SampledFunction inverse_fourier(const SampledFunction& f);

/// Symplectic Fourier transform
///   F_sigma a(X) = pi^{-1} int a(Y) e^{2 i sigma(X, Y)} dY,
///   sigma(X, Y) = <y, xi> - <x, eta>.
/// Computed as 2 G(-2 xi, -2 x) where G = (F (x) F^{-1}) a; the dilated
/// arguments are read from grid nodes and set to 0 where they fall off the
/// grid.
Matrix symplectic_fourier(const Matrix& a);
SampledSymbol symplectic_fourier(const SampledSymbol& a);

/// Periodic phase-space convolution h^2 sum_Y a(X - Y) b(Y), with both
/// arrays centred at index N/2.
Matrix periodic_convolve(const Matrix& a, const Matrix& b, double h);

/// Short-time Fourier transform
///   V_phi f(x_j, xi_k) = (2 pi)^{-1/2} h sum_y f(y) conj(phi(y - x_j)) e^{-i y xi_k}
/// with the window shift wrapped periodically. Rows index x, columns xi.
/// When `alias_budget` is set, f and phi are checked against it.
SampledSymbol stft(const SampledFunction& f, const SampledFunction& phi,
                   std::optional<double> alias_budget = kDefaultAliasBudget);

/// A-Wigner distribution
///   W^A_{f1,f2}(x, xi) = (2 pi)^{-1/2} int f1(x + A y) conj(f2(x - (1 - A) y)) e^{-i y xi} dy
/// on the phase grid. The y-integral runs over 2N nodes of spacing h
/// covering [-2L, 2L); off-grid arguments use SampledFunction::evaluate.
SampledSymbol wigner(const SampledFunction& f1, const SampledFunction& f2, double A = 0.5);

}  // namespace phasecalc

#endif  // PHASECALC_TFA_HPP

#ifndef PHASECALC_QUANTIZE_HPP
#define PHASECALC_QUANTIZE_HPP

#include <optional>

#include "phasecalc/grid.hpp"

namespace phasecalc {

/// Dense matrix of Op_A(a) on grid samples. Entries are kernel values times
/// h, so apply(f) is the rectangle rule for f -> int K(x, y) f(y) dy.
class OperatorMatrix {
 public:
  OperatorMatrix(Grid1D grid, Matrix entries, double quantization);

  const Grid1D& grid() const noexcept { return grid_; }
  const Matrix& entries() const noexcept { return entries_; }
  double quantization() const noexcept { return A_; }
  Index size() const noexcept { return entries_.rows(); }

  Vector apply(const Vector& f) const { return entries_ * f; }
  SampledFunction apply(const SampledFunction& f) const;

  /// Kernel samples K(x_m, x_n) = entries / h.
  Matrix kernel() const { return entries_ / grid_.spacing(); }

  /// Largest singular value: the discrete L2 -> L2 operator norm.
  double operator_norm_2() const;

 private:
  Grid1D grid_;
  Matrix entries_;
  double A_;
};

/// Kohn-Nirenberg matrix M_mn = N^{-1} sum_j a(x_m, xi_j) e^{i (x_m - x_n) xi_j}.
Matrix kn_matrix(const Matrix& a);
/// Exact inverse of kn_matrix: a(x_m, xi_j) = sum_n M_mn e^{-i (x_m - x_n) xi_j}.
Matrix kn_symbol(const Matrix& M);

/// Maps an A1-symbol to the A2-symbol of the same operator. With the 2D
/// centred DFT (x -> eta, xi -> y) the map multiplies by
/// exp(2 pi i (A1 - A2) k' l' / N), k', l' = index - N/2; on the Nyquist
/// row and column the product k' l' is replaced by |k'| |l'|, which keeps
/// real Weyl symbols exactly Hermitian.
Matrix change_quantization(const Matrix& a, double A1, double A2);
SampledSymbol change_quantization(const SampledSymbol& a, double A1, double A2);

/// Kernel samples K(x_m, x_n) of Op_A(a). When `alias_budget` is set, the
/// KN kernel's tail along the difference variable x - y is checked.
Matrix kernel_from_symbol(const SampledSymbol& a, double A, std::optional<double> alias_budget = std::nullopt);
SampledSymbol symbol_from_kernel(const Matrix& K, const PhaseGrid& grid, double A);

OperatorMatrix op_matrix(const SampledSymbol& a, double A = 0.5);
Matrix op_entries(const Matrix& a, double A = 0.5);
/// A-symbol of a matrix given in the OperatorMatrix convention.
Matrix symbol_of(const Matrix& M, double A = 0.5);
SampledSymbol symbol_of(const OperatorMatrix& M);

/// A-symbol of the rank-one kernel f1(x) conj(f2(y)), which equals
/// (2 pi)^{1/2} W^A_{f1,f2}.
SampledSymbol rank_one_symbol(const SampledFunction& f1, const SampledFunction& f2, double A = 0.5);

struct PairingResidual {
  Complex operator_side;  // (Op_A(a) f, g)
  Complex wigner_side;    // (2 pi)^{-1/2} (a, W^A_{g,f})
  double residual;        // |difference| / scale
  double scale;           // max(1, |operator_side|)
};

/// Compares (Op_A(a) f, g)_{L2} with (2 pi)^{-1/2} (a, W^A_{g,f})_{L2} by
/// quadrature; the two sides share no code beyond the grid. With
/// refinement r > 1 the phase-space integral runs on the self-dual grid of
/// r^2 N points (spacing h / r, range r L) from the exact evaluators of a,
/// f and g, which must be present; the operator side stays on the grid.
PairingResidual wigner_pairing_check(const SampledSymbol& a, const SampledFunction& f, const SampledFunction& g,
                                     double A = 0.5, int refinement = 1);

/// L2 inner product (f, g) = h sum f conj(g).
Complex inner(const SampledFunction& f, const SampledFunction& g);

}  // namespace phasecalc

#endif  // PHASECALC_QUANTIZE_HPP

#include "phasecalc/quantize.hpp"

#include <unsupported/Eigen/FFT>

#include "phasecalc/tfa.hpp"

namespace phasecalc {
namespace {

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> engine;
  return engine;
}

Matrix quantization_multiplier(Index n, double c) {
  Matrix m(n, n);
  const Index half = n / 2;
  for (Index k = 0; k < n; ++k)
    for (Index l = 0; l < n; ++l) {
      const Index kp = k - half, lp = l - half;
      const double P = (kp == -half || lp == -half) ? static_cast<double>(std::abs(kp) * std::abs(lp))
                                                    : static_cast<double>(kp * lp);
      m(k, l) = std::polar(1.0, 2.0 * kPi * c * P / static_cast<double>(n));
    }
  return m;
}

}  // namespace

OperatorMatrix::OperatorMatrix(Grid1D grid, Matrix entries, double quantization)
    : grid_(grid), entries_(std::move(entries)), A_(quantization) {
  if (entries_.rows() != grid_.size() || entries_.cols() != grid_.size())
    throw std::invalid_argument("operator matrix must be N x N");
}

SampledFunction OperatorMatrix::apply(const SampledFunction& f) const {
  if (!(f.grid() == grid_)) throw std::invalid_argument("apply: grid mismatch");
  return SampledFunction(grid_, Vector(entries_ * f.values()));
}

double OperatorMatrix::operator_norm_2() const {
  Eigen::JacobiSVD<Matrix> svd(entries_);
  return svd.singularValues()(0);
}

Matrix kn_matrix(const Matrix& a) {
  // Row m depends on (m - n) mod N only through
  //   c_m(r) = N^{-1} sum_j a_mj e^{2 pi i r (j - N/2) / N} = (-1)^r ifft(a_m)(r).
  const Index n = a.rows();
  Matrix M(n, n);
  std::vector<Complex> row(n), c(n);
  for (Index m = 0; m < n; ++m) {
    for (Index j = 0; j < n; ++j) row[j] = a(m, j);
    fft_engine().inv(c.data(), row.data(), static_cast<int>(n));
    for (Index col = 0; col < n; ++col) {
      const Index r = ((m - col) % n + n) % n;
      M(m, col) = (r % 2 == 0) ? c[r] : -c[r];
    }
  }
  return M;
}

Matrix kn_symbol(const Matrix& M) {
  const Index n = M.rows();
  Matrix a(n, n);
  std::vector<Complex> c(n), row(n);
  for (Index m = 0; m < n; ++m) {
    for (Index r = 0; r < n; ++r) {
      const Complex v = M(m, ((m - r) % n + n) % n);
      c[r] = (r % 2 == 0) ? v : -v;
    }
    fft_engine().fwd(row.data(), c.data(), static_cast<int>(n));
    for (Index j = 0; j < n; ++j) a(m, j) = row[j];
  }
  return a;
}

Matrix change_quantization(const Matrix& a, double A1, double A2) {
  if (A1 == A2) return a;
  const Matrix spec = centered_dft(centered_dft(a, 0), 1);
  const Matrix shifted = spec.cwiseProduct(quantization_multiplier(a.rows(), A1 - A2));
  return centered_idft(centered_idft(shifted, 0), 1);
}

SampledSymbol change_quantization(const SampledSymbol& a, double A1, double A2) {
  return SampledSymbol(a.grid(), change_quantization(a.values(), A1, A2));
}

Matrix op_entries(const Matrix& a, double A) { return kn_matrix(change_quantization(a, A, 0.0)); }

Matrix symbol_of(const Matrix& M, double A) { return change_quantization(kn_symbol(M), 0.0, A); }

SampledSymbol symbol_of(const OperatorMatrix& M) {
  return SampledSymbol(PhaseGrid(M.grid(), 1), symbol_of(M.entries(), M.quantization()));
}

OperatorMatrix op_matrix(const SampledSymbol& a, double A) {
  return OperatorMatrix(a.axis(), op_entries(a.values(), A), A);
}

Matrix kernel_from_symbol(const SampledSymbol& a, double A, std::optional<double> alias_budget) {
  const Matrix a0 = change_quantization(a.values(), A, 0.0);
  if (alias_budget) {
    // KN kernel as a function of (x, x - y) is the inverse DFT along xi.
    const SampledSymbol diff(a.grid(), centered_idft(a0, 1));
    const Grid1D& g = a.axis();
    double peak = 0.0, tail = 0.0;
    for (int i = 0; i < g.size(); ++i)
      for (int j = 0; j < g.size(); ++j) {
        const double v = std::abs(diff.values()(i, j));
        peak = std::max(peak, v);
        if (!g.is_central(j)) tail = std::max(tail, v);
      }
    const double ratio = peak == 0.0 ? 0.0 : tail / peak;
    if (ratio > *alias_budget)
      throw AliasingError("kernel_from_symbol: kernel tail ratio " + std::to_string(ratio) +
                              " along x - y exceeds aliasing budget",
                          ratio);
  }
  return kn_matrix(a0) / a.grid().h();
}

SampledSymbol symbol_from_kernel(const Matrix& K, const PhaseGrid& grid, double A) {
  return SampledSymbol(grid, symbol_of(Matrix(K * grid.h()), A));
}

SampledSymbol rank_one_symbol(const SampledFunction& f1, const SampledFunction& f2, double A) {
  if (!(f1.grid() == f2.grid())) throw std::invalid_argument("rank_one_symbol: grid mismatch");
  const Matrix K = f1.values() * f2.values().adjoint();
  return symbol_from_kernel(K, PhaseGrid(f1.grid(), 1), A);
}

Complex inner(const SampledFunction& f, const SampledFunction& g) {
  return f.grid().spacing() * g.values().dot(f.values());
}

PairingResidual wigner_pairing_check(const SampledSymbol& a, const SampledFunction& f, const SampledFunction& g,
                                     double A, int refinement) {
  if (refinement < 1) throw std::invalid_argument("wigner_pairing_check: refinement must be at least 1");
  const OperatorMatrix M = op_matrix(a, A);
  const Complex lhs = inner(M.apply(f), g);
  Complex pairing;
  if (refinement == 1) {
    const SampledSymbol W = wigner(g, f, A);
    const double h = a.grid().h();
    pairing = h * h * (W.values().conjugate().cwiseProduct(a.values())).sum();
  } else {
    if (!a.has_exact() || !f.has_exact() || !g.has_exact())
      throw std::invalid_argument("wigner_pairing_check: refinement needs exact evaluators");
    const Grid1D fine = Grid1D::self_dual(refinement * refinement * a.axis().size());
    const SampledSymbol W = wigner(SampledFunction(fine, g.exact()), SampledFunction(fine, f.exact()), A);
    const SampledSymbol af(PhaseGrid(fine, 1), a.exact());
    const double h = fine.spacing();
    pairing = h * h * (W.values().conjugate().cwiseProduct(af.values())).sum();
  }
  const Complex rhs = pairing / std::sqrt(2.0 * kPi);
  const double scale = std::max(1.0, std::abs(lhs));
  return {lhs, rhs, std::abs(lhs - rhs) / scale, scale};
}

}  // namespace phasecalc

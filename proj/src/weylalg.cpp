#include "phasecalc/weylalg.hpp"

#include "phasecalc/parallel.hpp"
#include "phasecalc/quantize.hpp"
#include "phasecalc/tfa.hpp"

namespace phasecalc {

Matrix weyl_product(const Matrix& a, const Matrix& b, double A) {
  return symbol_of(Matrix(op_entries(a, A) * op_entries(b, A)), A);
}

SampledSymbol weyl_product(const SampledSymbol& a, const SampledSymbol& b, double A) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("weyl_product: grid mismatch");
  return SampledSymbol(a.grid(), weyl_product(a.values(), b.values(), A));
}

Matrix twisted_convolution(const Matrix& a, const Matrix& b, double h) {
  const Index n = a.rows();
  if (n > kTwistedConvolutionMaxN)
    throw std::invalid_argument("twisted_convolution: N = " + std::to_string(n) +
                                " exceeds the direct-route limit; use weyl_product with the symplectic Fourier "
                                "transform instead");
  if (b.rows() != n || a.cols() != n || b.cols() != n) throw std::invalid_argument("twisted_convolution: shape");
  // Node t_k = (k - N/2) h; e^{2 i sigma(X, Y)} = e^{2 i (y_p xi_j - x_i eta_q)}
  // with 2 t_a t_b = 4 pi (a - N/2)(b - N/2) / N.
  std::vector<Complex> phase(n);
  for (Index r = 0; r < n; ++r) phase[r] = std::polar(1.0, 4.0 * kPi * static_cast<double>(r) / static_cast<double>(n));
  auto e2 = [&](Index u, Index v) {
    const Index r = (((u - n / 2) * (v - n / 2)) % n + n) % n;
    return phase[r];
  };
  Matrix out(n, n);
  parallel_for(static_cast<long>(n), [&](long il) {
    const Index i = il;
    for (Index j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (Index p = 0; p < n; ++p) {
        const Index ai = (i - p + n / 2 + n) % n;
        const Complex row_phase = e2(p, j);
        for (Index q = 0; q < n; ++q) {
          const Index aj = (j - q + n / 2 + n) % n;
          acc += a(ai, aj) * b(p, q) * row_phase * std::conj(e2(i, q));
        }
      }
      out(i, j) = acc;
    }
  });
  return std::sqrt(2.0 / kPi) * h * h * out;
}

SampledSymbol twisted_convolution(const SampledSymbol& a, const SampledSymbol& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("twisted_convolution: grid mismatch");
  return SampledSymbol(a.grid(), twisted_convolution(a.values(), b.values(), a.grid().h()));
}

Matrix reflect(const Matrix& a) {
  const Index n = a.rows();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = a((n - i) % n, (n - j) % n);
  return out;
}

RouteResidual central_residual(const Matrix& lhs, const Matrix& rhs) {
  const Index n = lhs.rows();
  double diff = 0.0, scale = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (std::abs(i - n / 2) > n / 4 || std::abs(j - n / 2) > n / 4) continue;
      diff = std::max(diff, std::abs(lhs(i, j) - rhs(i, j)));
      scale = std::max(scale, std::abs(lhs(i, j)));
    }
  scale = std::max(scale, 1e-300);
  return {diff / scale, scale};
}

RouteResidual product_route_equivalence(const SampledSymbol& a, const SampledSymbol& b) {
  const Matrix lhs = weyl_product(a.values(), b.values(), 0.5);
  const Matrix rhs =
      twisted_convolution(a.values(), symplectic_fourier(b.values()), a.grid().h()) / std::sqrt(2.0 * kPi);
  return central_residual(lhs, rhs);
}

RouteResidual twisted_fourier_identity_check(const SampledSymbol& a, const SampledSymbol& b) {
  const double h = a.grid().h();
  const Matrix lhs = symplectic_fourier(twisted_convolution(a.values(), b.values(), h));
  const Matrix mid = twisted_convolution(symplectic_fourier(a.values()), b.values(), h);
  const Matrix right = twisted_convolution(reflect(a.values()), symplectic_fourier(b.values()), h);
  const RouteResidual r1 = central_residual(lhs, mid), r2 = central_residual(lhs, right);
  return r1.residual >= r2.residual ? r1 : r2;
}

RouteResidual weyl_fourier_identity_check(const SampledSymbol& a, const SampledSymbol& b) {
  const double h = a.grid().h();
  const Matrix lhs = symplectic_fourier(weyl_product(a.values(), b.values(), 0.5));
  const Matrix rhs =
      twisted_convolution(symplectic_fourier(a.values()), symplectic_fourier(b.values()), h) / std::sqrt(2.0 * kPi);
  return central_residual(lhs, rhs);
}

RouteResidual commutator_check(const PhaseGrid& grid) {
  const Grid1D& g = grid.axis();
  const int n = g.size();
  Matrix x(n, n), xi(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      x(i, j) = g.node(i) * central_cutoff(g.node(i), g.half_width());
      xi(i, j) = g.node(j) * central_cutoff(g.node(j), g.half_width());
    }
  const Matrix comm = weyl_product(x, xi) - weyl_product(xi, x);
  return central_residual(Matrix::Constant(n, n, kI), comm);
}

}  // namespace phasecalc

#include "phasecalc/tfa.hpp"

#include <unsupported/Eigen/FFT>

namespace phasecalc {
namespace {

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> engine;
  return engine;
}

// In-place centred unitary DFT of n contiguous samples.
void centered_dft_inplace(Complex* data, Index n) {
  std::vector<Complex> in(data, data + n), out(n);
  for (Index k = 1; k < n; k += 2) in[k] = -in[k];
  fft_engine().fwd(out.data(), in.data(), static_cast<int>(n));
  const double scale = ((n / 2) % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(n));
  for (Index j = 0; j < n; ++j) data[j] = (j % 2 == 0 ? scale : -scale) * out[j];
}

void require_self_dual(const Grid1D& g) {
  if (!g.is_self_dual()) throw std::invalid_argument("Fourier transform needs a self-dual grid");
}

}  // namespace

Vector centered_dft(const Vector& f) {
  Vector out = f;
  centered_dft_inplace(out.data(), out.size());
  return out;
}

Vector centered_idft(const Vector& F) {
  Vector out = F.conjugate();
  centered_dft_inplace(out.data(), out.size());
  return out.conjugate();
}

Matrix centered_dft(const Matrix& a, int axis) {
  Matrix out = a;
  if (axis == 0) {
    for (Index j = 0; j < out.cols(); ++j) centered_dft_inplace(out.col(j).data(), out.rows());
  } else {
    Matrix t = out.transpose();
    for (Index j = 0; j < t.cols(); ++j) centered_dft_inplace(t.col(j).data(), t.rows());
    out = t.transpose();
  }
  return out;
}

Matrix centered_idft(const Matrix& a, int axis) {
  return centered_dft(Matrix(a.conjugate()), axis).conjugate();
}

SampledFunction fourier(const SampledFunction& f) {
  require_self_dual(f.grid());
  return SampledFunction(f.grid(), centered_dft(f.values()));
}

SampledFunction inverse_fourier(const SampledFunction& f) {
  require_self_dual(f.grid());
  return SampledFunction(f.grid(), centered_idft(f.values()));
}

Matrix symplectic_fourier(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0)
    throw std::invalid_argument("symplectic Fourier transform needs an even square grid");
  const Index n = a.rows();
  const Matrix g = centered_idft(centered_dft(a, 0), 1);
  // Node -2 t_j has index 3N/2 - 2j.
  Matrix out = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const Index col = 3 * n / 2 - 2 * i;
    if (col < 0 || col >= n) continue;
    for (Index j = 0; j < n; ++j) {
      const Index row = 3 * n / 2 - 2 * j;
      if (row >= 0 && row < n) out(i, j) = 2.0 * g(row, col);
    }
  }
  return out;
}

SampledSymbol symplectic_fourier(const SampledSymbol& a) {
  if (!a.axis().is_self_dual()) throw std::invalid_argument("symplectic Fourier transform needs a self-dual grid");
  return SampledSymbol(a.grid(), symplectic_fourier(a.values()));
}

Matrix periodic_convolve(const Matrix& a, const Matrix& b, double h) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("convolution shape mismatch");
  const Index n = a.rows(), m = a.cols();
  auto fft2 = [&](Matrix x, bool inverse) {
    std::vector<Complex> in, out;
    for (int axis = 0; axis < 2; ++axis) {
      const Index len = axis == 0 ? n : m, count = axis == 0 ? m : n;
      in.resize(len);
      out.resize(len);
      for (Index c = 0; c < count; ++c) {
        for (Index k = 0; k < len; ++k) in[k] = axis == 0 ? x(k, c) : x(c, k);
        if (inverse)
          fft_engine().inv(out.data(), in.data(), static_cast<int>(len));
        else
          fft_engine().fwd(out.data(), in.data(), static_cast<int>(len));
        for (Index k = 0; k < len; ++k) (axis == 0 ? x(k, c) : x(c, k)) = out[k];
      }
    }
    return x;
  };
  const Matrix A = fft2(a, false), B = fft2(b, false);
  const Matrix cyc = fft2(A.cwiseProduct(B), true);
  // Cyclic result at index i corresponds to centred index i + N/2.
  return h * h * translate(cyc, static_cast<int>(n / 2), static_cast<int>(m / 2));
}

SampledSymbol stft(const SampledFunction& f, const SampledFunction& phi, std::optional<double> alias_budget) {
  if (!(f.grid() == phi.grid())) throw std::invalid_argument("stft: function and window grids differ");
  if (phi.values().cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("stft: window is identically zero");
  if (alias_budget) {
    require_alias_budget(f, *alias_budget, "stft input");
    require_alias_budget(phi, *alias_budget, "stft window");
  }
  const Grid1D& g = f.grid();
  const int n = g.size();
  Matrix out(n, n);
  Vector row(n);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) row(m) = f.values()(m) * std::conj(phi.values()(g.wrap(m - j + n / 2)));
    out.row(j) = centered_dft(row).transpose();
  }
  return SampledSymbol(PhaseGrid(g, 1), out);
}

SampledSymbol wigner(const SampledFunction& f1, const SampledFunction& f2, double A) {
  if (!(f1.grid() == f2.grid())) throw std::invalid_argument("wigner: grids differ");
  if (A < -2.0 || A > 2.0) throw std::invalid_argument("wigner: A must lie in [-2, 2]");
  const Grid1D& g = f1.grid();
  require_self_dual(g);
  const int n = g.size();
  const double h = g.spacing();
  // y_m = (m - N) h over 2N nodes. With xi_j = (j - N/2) h on a self-dual
  // grid, exp(-i y_m xi_j) = (-1)^m exp(-2 pi i m j / N), so the 2N-term sum
  // folds onto N residues and one centred-free DFT.
  const Complex prefactor = h / std::sqrt(2.0 * kPi);
  Matrix out(n, n);
  std::vector<Complex> folded(n), spec(n);
  for (int i = 0; i < n; ++i) {
    const double x = g.node(i);
    std::fill(folded.begin(), folded.end(), Complex(0.0));
    for (int m = 0; m < 2 * n; ++m) {
      const double y = (m - n) * h;
      const Complex v = f1.evaluate(x + A * y) * std::conj(f2.evaluate(x - (1.0 - A) * y));
      folded[m % n] += (m % 2 == 0) ? v : -v;
    }
    fft_engine().fwd(spec.data(), folded.data(), n);
    for (int j = 0; j < n; ++j) out(i, j) = prefactor * spec[j];
  }
  return SampledSymbol(PhaseGrid(g, 1), out);
}

}  // namespace phasecalc

#include "phasecalc/confine.hpp"

#include <cmath>
#include <limits>

#include "phasecalc/parallel.hpp"
#include "phasecalc/quantize.hpp"
#include "phasecalc/tfa.hpp"
#include "phasecalc/weylalg.hpp"

namespace phasecalc {

namespace {

Matrix dft2(const Matrix& a) { return centered_dft(centered_dft(a, 0), 1); }
Matrix idft2(const Matrix& a) { return centered_idft(centered_idft(a, 0), 1); }

double factorial(int n) { return std::tgamma(n + 1.0); }

struct LineFit {
  double intercept = 0.0, slope = 0.0;
};

// Least squares y = intercept + slope x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) throw std::runtime_error("envelope fit: fewer than two usable nodes");
  Eigen::MatrixXd A(x.size(), 2);
  Eigen::VectorXd b(x.size());
  for (size_t k = 0; k < x.size(); ++k) {
    A(k, 0) = 1.0;
    A(k, 1) = x[k];
    b(k) = y[k];
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
  return {c(0), c(1)};
}

}  // namespace

Matrix spectral_derivative(const Matrix& a, const Grid1D& g, int ax, int axi) {
  if (ax < 0 || axi < 0) throw std::invalid_argument("spectral_derivative: negative order");
  if (!g.is_self_dual()) throw std::invalid_argument("spectral_derivative: requires a self-dual grid");
  const int n = g.size();
  Matrix A = dft2(a);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if ((ax > 0 && i == 0) || (axi > 0 && j == 0)) {
        A(i, j) = 0.0;
        continue;
      }
      A(i, j) *= std::pow(kI * g.node(i), ax) * std::pow(kI * g.node(j), axi);
    }
  return idft2(A);
}

ClassDiagnostic class_diagnostic(const SampledSymbol& a, const Weight& w, double s, int alpha_max,
                                 std::optional<double> alias_budget) {
  if (alpha_max < 0) throw std::invalid_argument("class_diagnostic: alpha_max must be nonnegative");
  const PhaseGrid& grid = a.grid();
  const Grid1D& g = grid.axis();
  const int n = g.size();
  const auto mask = central_mask(grid);
  const RealMatrix wv = w.sample(grid);
  auto central_max = [&](const Matrix& d) {
    double m = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (mask(i, j)) m = std::max(m, std::abs(d(i, j)) / wv(i, j));
    return m;
  };

  ClassDiagnostic out;
  out.weight = w.name();
  out.s = s;
  out.alpha_max = alpha_max;
  out.C = central_max(a.values());
  // Part of a in the top quarter of the frequency range along either axis.
  Matrix spectrum = dft2(a.values());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(i - n / 2) <= 3 * n / 8 && std::abs(j - n / 2) <= 3 * n / 8) spectrum(i, j) = 0.0;
  const Matrix outer = idft2(spectrum);

  for (int order = 1; order <= alpha_max; ++order)
    for (int ax = order; ax >= 0; --ax) {
      const int axi = order - ax;
      const Matrix d = spectral_derivative(a.values(), g, ax, axi);
      const double dmax = central_max(d);
      if (alias_budget) {
        // Top-band contribution in envelope units: compared with C, like max_ratio.
        const double top = central_max(spectral_derivative(outer, g, ax, axi));
        const double ratio = out.C > 0.0 ? top / (std::pow(factorial(ax) * factorial(axi), s) * out.C) : 0.0;
        if (ratio > *alias_budget)
          throw AliasingError("class_diagnostic: derivative alpha = (" + std::to_string(ax) + ", " +
                                  std::to_string(axi) + ") exceeds the aliasing budget",
                              ratio);
      }
      DerivativeRow row;
      row.ax = ax;
      row.axi = axi;
      row.max_ratio = dmax / std::pow(factorial(ax) * factorial(axi), s);
      row.h_alpha = out.C > 0.0 ? std::pow(row.max_ratio / out.C, 1.0 / order) : 0.0;
      out.h = std::max(out.h, row.h_alpha);
      out.rows.push_back(row);
    }
  for (auto& row : out.rows) {
    const double env = out.C * std::pow(out.h, row.ax + row.axi);
    row.residual = env > 0.0 ? row.max_ratio / env : 0.0;
  }
  return out;
}

ProductProfile confined_product_profile(const SampledSymbol& phi, const SampledSymbol& psi, const SampledSymbol& a1,
                                        const SampledSymbol& a2, std::array<int, 2> Y, std::array<int, 2> Z,
                                        double s, const RealMatrix* w1, const RealMatrix* w2) {
  const PhaseGrid& grid = phi.grid();
  const Grid1D& g = grid.axis();
  const int n = g.size();
  const double h = g.spacing();
  const Matrix left = translate(phi.values(), Y[0], Y[1]).cwiseProduct(a1.values());
  const Matrix right = translate(psi.values(), Z[0], Z[1]).cwiseProduct(a2.values());
  ProductProfile out;
  out.product = weyl_product(left, right, 0.5);
  out.peak = out.product.cwiseAbs().maxCoeff();

  const auto mask = central_mask(grid);
  auto dist = [&](double dx, double dxi) { return std::pow(std::hypot(dx, dxi), 1.0 / s); };
  const double yz = dist((Y[0] - Z[0]) * h, (Y[1] - Z[1]) * h);
  std::vector<double> xs, ys;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = std::abs(out.product(i, j));
      if (!mask(i, j) || !(v > 1e-12 * out.peak)) continue;
      const double x = g.node(i), xi = g.node(j);
      double lw = 0.0;
      if (w1) lw += std::log((*w1)(i, j));
      if (w2) lw += std::log((*w2)(i, j));
      xs.push_back(dist(x - Y[0] * h, xi - Y[1] * h) + dist(x - Z[0] * h, xi - Z[1] * h) + yz);
      ys.push_back(std::log(v) - lw);
    }
  const LineFit f = fit_line(xs, ys);
  out.C = std::exp(f.intercept);
  out.r = -f.slope;
  out.fitted_nodes = xs.size();
  return out;
}

PartitionOfUnity partition_of_unity(const SampledFunction& g, double lattice_step) {
  const Grid1D& ax = g.grid();
  const double h = ax.spacing();
  const double ratio = lattice_step / h;
  const int m = static_cast<int>(std::lround(ratio));
  if (m < 1 || std::abs(ratio - m) > 1e-9)
    throw std::invalid_argument("partition_of_unity: lattice step must be a positive multiple of h");
  if (ax.size() % m != 0) throw std::invalid_argument("partition_of_unity: lattice step must divide the period");
  const double norm = g.l2_norm();
  if (norm == 0.0) throw std::invalid_argument("partition_of_unity: zero function");
  const SampledFunction unit(ax, Vector(g.values() / norm));
  const PhaseGrid grid(ax, 1);

  const SampledSymbol phi = rank_one_symbol(unit, unit, 0.5);
  const Complex total = quadrature(phi);
  const SampledSymbol psi(grid, Matrix(phi.values() / total));
  PartitionOfUnity out{phi, psi, 0.0, 0.0, m};

  const Matrix pp = weyl_product(phi.values(), phi.values(), 0.5);
  out.idempotence = (pp - phi.values()).cwiseAbs().maxCoeff() / phi.values().cwiseAbs().maxCoeff();

  // psi_Y # phi_Y is the translate of psi # phi for grid-aligned Y.
  const Matrix base = weyl_product(psi.values(), phi.values(), 0.5);
  const int n = ax.size();
  Matrix sum = Matrix::Zero(n, n);
  for (int dy = 0; dy < n; dy += m)
    for (int deta = 0; deta < n; deta += m) sum += translate(base, dy, deta);
  sum *= lattice_step * lattice_step;
  const auto mask = central_mask(grid);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mask(i, j)) out.defect = std::max(out.defect, std::abs(sum(i, j) - 1.0));
  return out;
}

EnvelopeTable minfty1_envelope(const SampledSymbol& a, const Weight& w0, double s, int x_stride) {
  if (x_stride < 1) throw std::invalid_argument("minfty1_envelope: stride must be positive");
  const PhaseGrid& grid = a.grid();
  const Grid1D& g = grid.axis();
  const int n = g.size();
  const RealMatrix wv = w0.sample(grid);
  Matrix Phi(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Phi(i, j) = std::exp(-0.5 * (g.node(i) * g.node(i) + g.node(j) * g.node(j)));

  std::vector<std::array<int, 2>> centres;
  for (int i = 0; i < n; i += x_stride)
    for (int j = 0; j < n; j += x_stride)
      if (g.is_central(i) && g.is_central(j)) centres.push_back({i, j});

  // Rows of `per_x`: |V(X, .)| / w0(X) flattened, one per centre.
  RealMatrix per_x(static_cast<Index>(centres.size()), static_cast<Index>(n) * n);
  parallel_for(static_cast<long>(centres.size()), [&](long k) {
    const auto [i, j] = centres[k];
    const Matrix win = translate(Phi, i - n / 2, j - n / 2);
    const Matrix V = dft2(a.values().cwiseProduct(win));
    per_x.row(k) = Eigen::Map<const Vector>(V.data(), V.size()).cwiseAbs().transpose() / wv(i, j);
  });

  EnvelopeTable out;
  const Eigen::VectorXd E = per_x.colwise().maxCoeff();
  const Eigen::VectorXd sup_y = per_x.rowwise().maxCoeff();
  out.x_spread = sup_y.minCoeff() > 0.0 ? sup_y.maxCoeff() / sup_y.minCoeff() : std::numeric_limits<double>::infinity();
  const double peak = E.maxCoeff();
  std::vector<double> xs, ys;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double yn = std::hypot(g.node(i), g.node(j));
      const double e = E(static_cast<Index>(j) * n + i);
      out.Y_norm.push_back(yn);
      out.envelope.push_back(e);
      if (e > 1e-12 * peak) {
        xs.push_back(std::pow(yn, 1.0 / s));
        ys.push_back(std::log(e));
      }
    }
  const LineFit f = fit_line(xs, ys);
  out.C = std::exp(f.intercept);
  out.r = -f.slope;
  out.fitted_nodes = xs.size();
  return out;
}

}  // namespace phasecalc

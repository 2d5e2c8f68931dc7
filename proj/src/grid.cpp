#include "phasecalc/grid.hpp"

#include <cmath>
#include <string>

#include "phasecalc/tfa.hpp"

namespace phasecalc {

Grid1D::Grid1D(int n_points, double spacing) : n_(n_points), h_(spacing) {
  if (n_points % 2 != 0) throw std::invalid_argument("N must be even (got " + std::to_string(n_points) + ")");
  if (n_points < 8) throw std::invalid_argument("N must be at least 8 (got " + std::to_string(n_points) + ")");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw std::invalid_argument("spacing h must be positive");
}

Grid1D Grid1D::self_dual(int n_points) {
  if (n_points <= 0) throw std::invalid_argument("N must be at least 8 (got " + std::to_string(n_points) + ")");
  return Grid1D(n_points, std::sqrt(2.0 * kPi / n_points));
}

Eigen::VectorXd Grid1D::nodes() const {
  Eigen::VectorXd x(n_);
  for (int k = 0; k < n_; ++k) x(k) = node(k);
  return x;
}

bool Grid1D::is_self_dual() const noexcept {
  return std::abs(h_ * h_ * n_ - 2.0 * kPi) <= 1e-12 * 2.0 * kPi;
}

std::optional<int> Grid1D::index_of(double x) const {
  const double u = x / h_ + n_ / 2;
  const double k = std::round(u);
  if (std::abs(u - k) > 1e-9 || k < 0 || k >= n_) return std::nullopt;
  return static_cast<int>(k);
}

PhaseGrid::PhaseGrid(Grid1D axis, int dim) : axis_(axis), dim_(dim) {
  if (dim < 1) throw std::invalid_argument("dimension d must be at least 1");
}

Index PhaseGrid::node_count() const noexcept {
  Index count = 1;
  for (int i = 0; i < 2 * dim_; ++i) count *= axis_.size();
  return count;
}

std::vector<double> PhaseGrid::node(Index flat) const {
  std::vector<double> X(2 * dim_);
  for (int c = 2 * dim_ - 1; c >= 0; --c) {
    X[c] = axis_.node(static_cast<int>(flat % axis_.size()));
    flat /= axis_.size();
  }
  return X;
}

PhaseGrid make_grid(int n_points, int dim, GridMode mode) {
  if (n_points % 2 != 0) throw std::invalid_argument("N must be even (got " + std::to_string(n_points) + ")");
  if (std::holds_alternative<SelfDual>(mode)) return PhaseGrid(Grid1D::self_dual(n_points), dim);
  return PhaseGrid(Grid1D(n_points, std::get<CustomSpacing>(mode).h), dim);
}

// ---------------------------------------------------------------------------

SampledFunction::SampledFunction(Grid1D grid, Vector values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("sample count does not match grid size");
  fine_ = upsampled2();
}

SampledFunction::SampledFunction(Grid1D grid, Evaluator exact)
    : grid_(grid), values_(grid.size()), exact_(std::move(exact)) {
  for (int k = 0; k < grid_.size(); ++k) values_(k) = exact_(grid_.node(k));
}

Vector SampledFunction::upsampled2() const {
  // Centred spectrum on N modes, zero-padded to 2N; the Nyquist mode is
  // split evenly between +N/2 and -N/2 so real data stays real.
  const int n = grid_.size();
  const Vector spec = centered_dft(values_);
  Vector padded = Vector::Zero(2 * n);
  for (int j = 1; j < n; ++j) padded(j + n / 2) = spec(j);
  padded(n / 2) = 0.5 * spec(0);
  padded(n / 2 + n) = 0.5 * spec(0);
  // Evaluate the trigonometric interpolant at x = (m - N) h / 2.
  const Vector fine = centered_idft(padded) * std::sqrt(2.0);
  return fine;
}

Complex SampledFunction::evaluate(double x) const {
  if (exact_) return exact_(x);
  const double L = grid_.half_width();
  if (x < -L - 1e-12 || x >= L - 1e-12) return 0.0;
  if (auto k = grid_.index_of(x)) return values_(*k);
  const double u = 2.0 * x / grid_.spacing() + grid_.size();
  const double m = std::round(u);
  if (std::abs(u - m) > 1e-9)
    throw std::domain_error("off-grid point " + std::to_string(x) +
                            " is not on the half-step grid and no exact evaluator is attached");
  return fine_(static_cast<Index>(m));
}

double SampledFunction::l2_norm() const {
  return std::sqrt(grid_.spacing() * values_.squaredNorm());
}

// ---------------------------------------------------------------------------

SampledSymbol::SampledSymbol(PhaseGrid grid, Matrix values)
    : grid_(grid), values_(std::move(values)) {
  if (grid_.dim() != 1) throw std::invalid_argument("SampledSymbol supports d = 1 only");
  if (values_.rows() != grid_.n() || values_.cols() != grid_.n())
    throw std::invalid_argument("symbol sample array must be N x N");
}

SampledSymbol::SampledSymbol(PhaseGrid grid, Evaluator exact)
    : grid_(grid), values_(grid.n(), grid.n()), exact_(std::move(exact)) {
  if (grid_.dim() != 1) throw std::invalid_argument("SampledSymbol supports d = 1 only");
  const Grid1D& g = grid_.axis();
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) values_(i, j) = exact_(g.node(i), g.node(j));
}

SampledSymbol SampledSymbol::constant(const PhaseGrid& grid, Complex c) {
  return SampledSymbol(grid, Matrix::Constant(grid.n(), grid.n(), c));
}

// ---------------------------------------------------------------------------

Complex quadrature(const SampledFunction& f) {
  return quadrature(f.values(), f.grid().spacing(), 1);
}

Complex quadrature(const SampledSymbol& a) {
  return quadrature(a.values(), a.grid().h(), 2);
}

Complex quadrature(const PhaseGrid& grid, const Vector& flat_values) {
  if (flat_values.size() != grid.node_count())
    throw std::invalid_argument("sample count does not match phase grid node count");
  return quadrature(flat_values, grid.h(), 2 * grid.dim());
}

namespace {

template <typename Derived, typename CentralFn>
double tail_ratio_impl(const Eigen::DenseBase<Derived>& v, CentralFn central) {
  double peak = 0.0, tail = 0.0;
  for (Index i = 0; i < v.rows(); ++i)
    for (Index j = 0; j < v.cols(); ++j) {
      const double m = std::abs(v(i, j));
      peak = std::max(peak, m);
      if (!central(i, j)) tail = std::max(tail, m);
    }
  return peak == 0.0 ? 0.0 : tail / peak;
}

}  // namespace

double tail_ratio(const SampledFunction& f) {
  const Grid1D& g = f.grid();
  return tail_ratio_impl(f.values(), [&](Index i, Index) { return g.is_central(static_cast<int>(i)); });
}

double tail_ratio(const SampledSymbol& a) {
  const Grid1D& g = a.axis();
  return tail_ratio_impl(a.values(), [&](Index i, Index j) {
    return g.is_central(static_cast<int>(i)) && g.is_central(static_cast<int>(j));
  });
}

void require_alias_budget(const SampledFunction& f, double budget, const std::string& what) {
  const double r = tail_ratio(f);
  if (r > budget)
    throw AliasingError(what + ": tail mass ratio " + std::to_string(r) + " exceeds aliasing budget " +
                            std::to_string(budget),
                        r);
}

void require_alias_budget(const SampledSymbol& a, double budget, const std::string& what) {
  const double r = tail_ratio(a);
  if (r > budget)
    throw AliasingError(what + ": tail mass ratio " + std::to_string(r) + " exceeds aliasing budget " +
                            std::to_string(budget),
                        r);
}

double central_cutoff(double t, double half_width) {
  const double half = 0.5 * half_width;
  const double u = (std::abs(t) - half) / half;
  if (u <= 0.0) return 1.0;
  if (u >= 1.0) return 0.0;
  const auto e = [](double v) { return v > 0.0 ? std::exp(-1.0 / v) : 0.0; };
  return e(1.0 - u) / (e(1.0 - u) + e(u));
}

RealMatrix central_window(const PhaseGrid& grid) {
  const Grid1D& g = grid.axis();
  Eigen::VectorXd c(g.size());
  for (int k = 0; k < g.size(); ++k) c(k) = central_cutoff(g.node(k), g.half_width());
  return c * c.transpose();
}

Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> central_mask(const PhaseGrid& grid) {
  const Grid1D& g = grid.axis();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> m(g.size(), g.size());
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) m(i, j) = g.is_central(i) && g.is_central(j);
  return m;
}

Matrix translate(const Matrix& a, int dx, int dxi) {
  const Index n = a.rows(), m = a.cols();
  Matrix out(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j)
      out(i, j) = a(((i - dx) % n + n) % n, ((j - dxi) % m + m) % m);
  return out;
}

}  // namespace phasecalc

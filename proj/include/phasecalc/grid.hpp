#ifndef PHASECALC_GRID_HPP
#define PHASECALC_GRID_HPP

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "phasecalc/types.hpp"

namespace phasecalc {

/// Uniform grid with nodes x_k = (k - N/2) h, k = 0..N-1.
///
/// Index k corresponds to node (k - N/2) h everywhere in the library; the
/// discrete Fourier transforms in tfa.hpp use the same centring, so the
/// frequency node with index j is (j - N/2) h on a self-dual grid.
class Grid1D {
 public:
  Grid1D(int n_points, double spacing);

  /// Self-dual spacing h = sqrt(2 pi / N): the dual grid coincides with
  /// the grid itself.
  static Grid1D self_dual(int n_points);

  int size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }
  double node(int k) const noexcept { return (k - n_ / 2) * h_; }
  Eigen::VectorXd nodes() const;

  /// N h, the period of the implied torus.
  double period() const noexcept { return n_ * h_; }
  /// L = N h / 2; nodes lie in [-L, L).
  double half_width() const noexcept { return 0.5 * n_ * h_; }

  bool is_self_dual() const noexcept;

  /// Central nodes satisfy |x_k| <= (N/4) h.
  bool is_central(int k) const noexcept { return std::abs(k - n_ / 2) <= n_ / 4; }

  /// Index of the node nearest to x, or nullopt when x is not within 1e-9 h
  /// of a node.
  std::optional<int> index_of(double x) const;

  /// Wraps an integer index into [0, N).
  int wrap(int k) const noexcept { return ((k % n_) + n_) % n_; }

  bool operator==(const Grid1D& other) const noexcept {
    return n_ == other.n_ && h_ == other.h_;
  }

 private:
  int n_;
  double h_;
};

struct SelfDual {};
struct CustomSpacing {
  double h;
};
using GridMode = std::variant<SelfDual, CustomSpacing>;

/// Phase space R^{2d} discretized by the same 1D grid on every coordinate.
/// Flat node indices are row-major with coordinate 0 varying slowest;
/// coordinates 0..d-1 are x, d..2d-1 are xi.
class PhaseGrid {
 public:
  PhaseGrid(Grid1D axis, int dim);

  const Grid1D& axis() const noexcept { return axis_; }
  int dim() const noexcept { return dim_; }
  int n() const noexcept { return axis_.size(); }
  double h() const noexcept { return axis_.spacing(); }
  Index node_count() const noexcept;
  std::vector<double> node(Index flat) const;

  bool operator==(const PhaseGrid& other) const noexcept {
    return axis_ == other.axis_ && dim_ == other.dim_;
  }

 private:
  Grid1D axis_;
  int dim_;
};

PhaseGrid make_grid(int n_points, int dim, GridMode mode = SelfDual{});

/// Complex samples of a function on a 1D grid, optionally carrying the
/// exact function for off-grid evaluation.
class SampledFunction {
 public:
  using Evaluator = std::function<Complex(double)>;

  SampledFunction(Grid1D grid, Vector values);
  SampledFunction(Grid1D grid, Evaluator exact);

  const Grid1D& grid() const noexcept { return grid_; }
  const Vector& values() const noexcept { return values_; }
  bool has_exact() const noexcept { return static_cast<bool>(exact_); }
  const Evaluator& exact() const noexcept { return exact_; }

  /// Off-grid value: the exact evaluator when present, zero outside
  /// [-L, L), and the x2 band-limited interpolant on half-grid points.
  /// Any other point throws.
  Complex evaluate(double x) const;

  /// Samples on the half-step grid (2N points, spacing h/2) obtained by
  /// zero-padding the centred DFT.
  Vector upsampled2() const;

  double l2_norm() const;

 private:
  Grid1D grid_;
  Vector values_;
  Vector fine_;
  Evaluator exact_;
};

/// Complex samples of a symbol a(x, xi) on a d = 1 phase grid. Rows index
/// x, columns index xi.
class SampledSymbol {
 public:
  using Evaluator = std::function<Complex(double, double)>;

  SampledSymbol(PhaseGrid grid, Matrix values);
  SampledSymbol(PhaseGrid grid, Evaluator exact);

  const PhaseGrid& grid() const noexcept { return grid_; }
  const Grid1D& axis() const noexcept { return grid_.axis(); }
  const Matrix& values() const noexcept { return values_; }
  bool has_exact() const noexcept { return static_cast<bool>(exact_); }
  const Evaluator& exact() const noexcept { return exact_; }

  static SampledSymbol constant(const PhaseGrid& grid, Complex c);

 private:
  PhaseGrid grid_;
  Matrix values_;
  Evaluator exact_;
};

/// Rectangle rule h^dim * sum(values).
template <typename Derived>
Complex quadrature(const Eigen::DenseBase<Derived>& values, double h, int dim) {
  if (values.size() == 0) throw std::invalid_argument("quadrature of an empty sample array");
  return std::pow(h, dim) * Complex(values.sum());
}

Complex quadrature(const SampledFunction& f);
Complex quadrature(const SampledSymbol& a);
/// Generic-d phase-space quadrature over flat samples (see PhaseGrid::node).
Complex quadrature(const PhaseGrid& grid, const Vector& flat_values);

/// max |f| over nodes outside the central half divided by max |f|. Zero
/// data has ratio 0.
double tail_ratio(const SampledFunction& f);
double tail_ratio(const SampledSymbol& a);

/// Throws AliasingError naming `what` when tail_ratio exceeds `budget`.
void require_alias_budget(const SampledFunction& f, double budget, const std::string& what);
void require_alias_budget(const SampledSymbol& a, double budget, const std::string& what);

/// Default aliasing budget.
inline constexpr double kDefaultAliasBudget = 1e-6;

/// Smooth cutoff equal to 1 for |t| <= L/2 and 0 for |t| >= L, with a
/// C-infinity transition built from exp(-1/u).
double central_cutoff(double t, double half_width);

/// Cutoff chi(x) chi(xi) sampled on the phase grid.
RealMatrix central_window(const PhaseGrid& grid);

/// Mask of central phase nodes, |X|_inf <= (N/4) h.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> central_mask(const PhaseGrid& grid);

/// Shifts a symbol by grid-aligned steps (dx, dxi) with periodic wrap:
/// result(X) = a(X - (dx h, dxi h)).
Matrix translate(const Matrix& a, int dx, int dxi);

}  // namespace phasecalc

#endif  // PHASECALC_GRID_HPP

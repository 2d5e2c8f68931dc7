#include "doctest.h"
#include "oracles.hpp"
#include "phasecalc/quantize.hpp"
#include "phasecalc/tfa.hpp"

using namespace phasecalc;

namespace {

Matrix random_symbol(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(n01(rng), n01(rng));
  return a;
}

// Kohn-Nirenberg matrix entry by its defining sum.
Complex kn_entry(const Grid1D& g, const Matrix& a, int m, int n) {
  Complex acc = 0.0;
  for (int j = 0; j < g.size(); ++j) acc += a(m, j) * std::polar(1.0, (g.node(m) - g.node(n)) * g.node(j));
  return acc / static_cast<double>(g.size());
}

}  // namespace

TEST_CASE("KN matrix matches its defining sum") {
  const Grid1D g = Grid1D::self_dual(16);
  const Matrix a = random_symbol(16, 1);
  const Matrix M = kn_matrix(a);
  double worst = 0.0;
  for (int m = 0; m < 16; ++m)
    for (int n = 0; n < 16; ++n) worst = std::max(worst, std::abs(M(m, n) - kn_entry(g, a, m, n)));
  CHECK(worst < 1e-13);
}

TEST_CASE("symbol to kernel round trip") {
  const PhaseGrid pg = make_grid(32, 1);
  const SampledSymbol a(pg, random_symbol(32, 2));
  for (double A : {0.0, 0.25, 0.5, 1.0}) {
    const SampledSymbol back = symbol_from_kernel(kernel_from_symbol(a, A), pg, A);
    CHECK((back.values() - a.values()).cwiseAbs().maxCoeff() < 1e-12 * oracle::max_abs(a.values()));
  }
  CHECK(symbol_from_kernel(Matrix::Zero(32, 32), pg, 0.5).values().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("unit symbol quantizes to the identity") {
  const PhaseGrid pg = make_grid(32, 1);
  const SampledSymbol one = SampledSymbol::constant(pg, 1.0);
  const Matrix K = kernel_from_symbol(one, 0.0);
  CHECK((K * pg.h() - Matrix::Identity(32, 32)).cwiseAbs().maxCoeff() < 1e-12);
  for (double A : {0.0, 0.25, 0.5, 1.0})
    CHECK((op_matrix(one, A).entries() - Matrix::Identity(32, 32)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("x-only symbols are multiplication operators") {
  const PhaseGrid pg = make_grid(32, 1);
  const Grid1D& g = pg.axis();
  const SampledSymbol m(pg, [](double x, double) { return Complex(std::cos(x) + 0.1 * x * x); });
  const SampledFunction f(g, oracle::coherent(0.3, 0.2));
  for (double A : {0.0, 0.25, 0.5, 1.0}) {
    const Vector mf = op_matrix(m, A).apply(f.values());
    double worst = 0.0;
    for (int k = 0; k < 32; ++k) worst = std::max(worst, std::abs(mf(k) - m.values()(k, 0) * f.values()(k)));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("xi quantizes to -i d/dx") {
  const PhaseGrid pg = make_grid(64, 1);
  const Grid1D& g = pg.axis();
  const SampledSymbol xi(pg, [](double, double v) { return Complex(v); });
  const SampledFunction f(g, oracle::coherent(0.2, 0.7));
  const Vector lhs = op_matrix(xi, 0.0).apply(f.values());
  // Spectral derivative oracle: multiply the Fourier transform by i xi.
  Vector F = centered_dft(f.values());
  for (int j = 0; j < 64; ++j) F(j) *= Complex(0, 1) * g.node(j);
  const Vector df = centered_idft(F);
  CHECK((lhs - (-kI) * df).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("change of quantization") {
  const PhaseGrid pg = make_grid(32, 1);
  const Matrix a = random_symbol(32, 4);
  CHECK(change_quantization(a, 0.3, 0.3) == a);
  for (auto [A1, A2] : {std::pair{0.0, 0.5}, {0.25, 1.0}, {1.0, 0.0}}) {
    const Matrix there = change_quantization(a, A1, A2);
    CHECK((change_quantization(there, A2, A1) - a).cwiseAbs().maxCoeff() < 1e-12 * oracle::max_abs(a));
    CHECK((op_entries(a, A1) - op_entries(there, A2)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("x xi in KN equals x xi + i/2 in Weyl") {
  const PhaseGrid pg = make_grid(32, 1);
  const SampledSymbol xxi(pg, [](double x, double xi) { return Complex(x * xi); });
  const SampledSymbol weyl(pg, [](double x, double xi) { return Complex(x * xi, 0.5); });
  const Matrix from_change = change_quantization(xxi.values(), 0.0, 0.5);
  const auto centre = central_mask(pg);
  double worst = 0.0;
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      if (centre(i, j)) worst = std::max(worst, std::abs(from_change(i, j) - weyl.values()(i, j)));
  INFO("central distance from x xi + i/2: " << worst);
  // The grid symbol x xi is a sawtooth on the torus, so agreement holds
  // only in the interior, and the difference is checked as information.
  CHECK((op_matrix(xxi, 0.0).entries() - op_matrix(SampledSymbol(pg, from_change), 0.5).entries())
            .cwiseAbs()
            .maxCoeff() < 1e-10);
}

TEST_CASE("real Weyl symbols give Hermitian matrices") {
  const PhaseGrid pg = make_grid(32, 1);
  const Matrix a = random_symbol(32, 5).real().cast<Complex>();
  const Matrix M = op_entries(a, 0.5);
  CHECK((M - M.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * M.cwiseAbs().maxCoeff());
}

TEST_CASE("quantization is linear") {
  const Matrix a = random_symbol(32, 6), b = random_symbol(32, 7);
  const Complex alpha(0.5, 2.0), beta(-1.0, 0.25);
  for (double A : {0.0, 0.5}) {
    const Matrix lhs = op_entries(Matrix(alpha * a + beta * b), A);
    const Matrix rhs = alpha * op_entries(a, A) + beta * op_entries(b, A);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12 * rhs.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("rank-one kernels recover Wigner distributions") {
  const Grid1D g = Grid1D::self_dual(64);
  const SampledFunction f1(g, oracle::coherent(0.5, 0.3, 0.9));
  const SampledFunction f2(g, oracle::coherent(-0.4, -0.2, 1.1));
  for (double A : {0.0, 0.5, 1.0}) {
    const Matrix sym = rank_one_symbol(f1, f2, A).values();
    const Matrix W = std::sqrt(2 * kPi) * wigner(f1, f2, A).values();
    CHECK((sym - W).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("change of quantization on rank-one symbols") {
  const Grid1D g = Grid1D::self_dual(64);
  const SampledFunction f(g, oracle::coherent(0.3, 0.4));
  const SampledFunction h(g, oracle::coherent(-0.2, 0.1, 0.8));
  const Matrix W0 = std::sqrt(2 * kPi) * wigner(f, h, 0.0).values();
  const Matrix W1 = std::sqrt(2 * kPi) * wigner(f, h, 0.5).values();
  CHECK((change_quantization(W0, 0.0, 0.5) - W1).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("Weyl symbol of a rank-one projector has unit norm") {
  const PhaseGrid pg = make_grid(64, 1);
  const SampledFunction phi(pg.axis(), oracle::coherent(0, 0));
  const SampledSymbol a(pg, Matrix(std::sqrt(2 * kPi) * wigner(phi, phi, 0.5).values()));
  const OperatorMatrix M = op_matrix(a, 0.5);
  const Matrix P = pg.h() * phi.values() * phi.values().adjoint();
  CHECK((M.entries() - P).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(std::abs(M.operator_norm_2() - 1.0) < 1e-8);
}

TEST_CASE("Wigner pairing identity") {
  const PhaseGrid pg = make_grid(32, 1);
  const Grid1D& g = pg.axis();
  const SampledFunction f(g, oracle::coherent(0.3, -0.5));
  const SampledFunction h(g, oracle::coherent(-0.6, 0.2, 1.1));
  // Unit symbol: both sides equal (f, h).
  const auto unit = wigner_pairing_check(SampledSymbol::constant(pg, 1.0), f, h, 0.5);
  CHECK(std::abs(unit.operator_side - inner(f, h)) < 1e-12);
  CHECK(unit.residual < 1e-8);

  std::mt19937_64 rng(21);
  for (int t = 0; t < 3; ++t) {
    const auto mix = oracle::random_mixture(rng, 3, 1.5, 1.0, 1.0);
    const SampledSymbol a(pg, mix);
    for (double A : {0.0, 0.5, 1.0}) CHECK(wigner_pairing_check(a, f, h, A).residual < 1e-8);
  }

  // Rank-one symbol of (phi, phi): the operator side is (f, phi)(phi, h).
  const SampledFunction phi(g, oracle::coherent(0, 0));
  const SampledSymbol r(pg, Matrix(std::sqrt(2 * kPi) * wigner(phi, phi, 0.5).values()));
  const auto rr = wigner_pairing_check(r, f, h, 0.5);
  CHECK(std::abs(rr.operator_side - inner(f, phi) * inner(phi, h)) < 1e-8);
  CHECK(rr.residual < 1e-8);
}

TEST_CASE("kernel alias budget is opt-in") {
  const PhaseGrid pg = make_grid(32, 1);
  const SampledSymbol xi(pg, [](double, double v) { return Complex(v); });
  CHECK_NOTHROW(kernel_from_symbol(xi, 0.5));
  CHECK_THROWS_AS(kernel_from_symbol(xi, 0.5, 1e-6), AliasingError);
  const PhaseGrid fine = make_grid(64, 1);
  const SampledSymbol smooth(fine, [](double x, double xi) { return Complex(std::exp(-(x * x + xi * xi) / 2)); });
  CHECK_NOTHROW(kernel_from_symbol(smooth, 0.5, 1e-6));
}

TEST_CASE("refined phase-space quadrature in the pairing check") {
  // Cross-Wigner of separated narrow states oscillates; at N = 32 the grid
  // sum of (a, W) is the weak side, not the operator.
  const PhaseGrid pg = make_grid(32, 1);
  const Grid1D& g = pg.axis();
  const SampledFunction f(g, oracle::coherent(0.67, 0.88, 0.82));
  const SampledFunction h(g, oracle::coherent(0.20, -0.73, 0.83));
  const SampledSymbol a(pg, [](double x, double xi) {
    return Complex(std::exp(-((x + 0.95) * (x + 0.95) + (xi - 0.98) * (xi - 0.98))));
  });
  const auto coarse = wigner_pairing_check(a, f, h, 0.5);
  const auto fine = wigner_pairing_check(a, f, h, 0.5, 2);
  CHECK(fine.operator_side == coarse.operator_side);
  CHECK(fine.residual < coarse.residual);
  CHECK(fine.residual < 1e-8);
  // Converged reference: the same pairing on a grid of 128 points.
  const PhaseGrid big = make_grid(128, 1);
  const auto ref = wigner_pairing_check(SampledSymbol(big, a.exact()), SampledFunction(big.axis(), f.exact()),
                                        SampledFunction(big.axis(), h.exact()), 0.5);
  CHECK(std::abs(fine.wigner_side - ref.wigner_side) < 1e-12);
  CHECK_THROWS_AS(wigner_pairing_check(SampledSymbol(pg, a.values()), f, h, 0.5, 2), std::invalid_argument);
  CHECK_THROWS_AS(wigner_pairing_check(a, f, h, 0.5, 0), std::invalid_argument);
}

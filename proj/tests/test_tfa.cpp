#include "doctest.h"
#include "oracles.hpp"
#include "phasecalc/tfa.hpp"

using namespace phasecalc;

namespace {

Vector random_vector(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  Vector v(n);
  for (int k = 0; k < n; ++k) v(k) = Complex(n01(rng), n01(rng));
  return v;
}

}  // namespace

TEST_CASE("centred DFT matches the term-by-term sum") {
  const Grid1D g = Grid1D::self_dual(32);
  const Vector f = random_vector(32, 1);
  const Vector F = centered_dft(f);
  for (int j = 0; j < 32; ++j) CHECK(std::abs(F(j) - oracle::fourier_at(g, f, g.node(j))) < 1e-12);
}

TEST_CASE("Gaussian is a Fourier fixed point") {
  const Grid1D g = Grid1D::self_dual(64);
  const SampledFunction f(g, [](double x) { return Complex(std::exp(-x * x / 2)); });
  const Vector F = fourier(f).values();
  CHECK((F - f.values()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("translation becomes modulation") {
  const Grid1D g = Grid1D::self_dual(64);
  const SampledFunction f(g, [](double x) { return Complex(std::exp(-(x - 1) * (x - 1) / 2)); });
  const Vector F = fourier(f).values();
  double worst = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double xi = g.node(j);
    worst = std::max(worst, std::abs(F(j) - std::exp(-xi * xi / 2) * std::polar(1.0, -xi)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("Parseval and inversion") {
  const Grid1D g = Grid1D::self_dual(64);
  const SampledFunction f(g, random_vector(64, 7));
  const SampledFunction F = fourier(f);
  CHECK(std::abs(F.l2_norm() - f.l2_norm()) < 1e-12 * f.l2_norm());
  CHECK((inverse_fourier(F).values() - f.values()).norm() < 1e-12 * f.values().norm());
  CHECK((fourier(inverse_fourier(f)).values() - f.values()).norm() < 1e-12 * f.values().norm());
}

TEST_CASE("Fourier needs a self-dual grid") {
  const Grid1D g(32, 0.3);
  CHECK_THROWS_AS(fourier(SampledFunction(g, Vector(Vector::Ones(32)))), std::invalid_argument);
}

TEST_CASE("symplectic Fourier transform matches direct quadrature") {
  const Grid1D g = Grid1D::self_dual(32);
  std::mt19937_64 rng(11);
  const auto mix = oracle::random_mixture(rng, 3, 1.0, 0.8, 1.5);
  const Matrix a = oracle::sample(g, std::function<Complex(double, double)>(mix));
  const Matrix Fa = symplectic_fourier(a);
  // Only dilated nodes -2X inside the grid are comparable; beyond them the
  // grid sum aliases while the transform is set to zero.
  double worst = 0.0;
  for (int i = 9; i < 25; i += 2)
    for (int j = 9; j < 25; j += 2)
      worst = std::max(worst, std::abs(Fa(i, j) - oracle::symplectic_fourier_at(g, a, g.node(i), g.node(j))));
  CHECK(worst < 1e-12);
}

TEST_CASE("radial Gaussian is symplectic-Fourier invariant") {
  const PhaseGrid pg = make_grid(64, 1);
  const SampledSymbol a(pg, [](double x, double xi) { return Complex(std::exp(-(x * x + xi * xi))); });
  const Matrix Fa = symplectic_fourier(a).values();
  CHECK((Fa - a.values()).cwiseAbs().maxCoeff() < 1e-10);
  // Direct oracle at a handful of nodes.
  for (int i : {20, 32, 40})
    for (int j : {25, 32, 37})
      CHECK(std::abs(Fa(i, j) - oracle::symplectic_fourier_at(pg.axis(), a.values(), pg.axis().node(i),
                                                                pg.axis().node(j))) < 1e-10);
}

TEST_CASE("symplectic Fourier transform is an involution on resolved symbols") {
  const Grid1D g = Grid1D::self_dual(64);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto mix = oracle::random_mixture(rng, 3, 0.25, 0.9, 1.1);
    const Matrix a = oracle::sample(g, std::function<Complex(double, double)>(mix));
    const Matrix back = symplectic_fourier(symplectic_fourier(a));
    CHECK((back - a).cwiseAbs().maxCoeff() < 1e-9);
  }
  CHECK(symplectic_fourier(Matrix(Matrix::Zero(16, 16))).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("periodic convolution of Gaussians") {
  const Grid1D g = Grid1D::self_dual(64);
  auto gauss = [](double w) {
    return std::function<Complex(double, double)>(
        [w](double x, double xi) { return Complex(std::exp(-w * (x * x + xi * xi))); });
  };
  const Matrix c = periodic_convolve(oracle::sample(g, gauss(1.0)), oracle::sample(g, gauss(1.0)), g.spacing());
  const Matrix expect = (kPi / 2) * oracle::sample(g, gauss(0.5));
  CHECK((c - expect).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("STFT of a Gaussian against itself") {
  const Grid1D g = Grid1D::self_dual(64);
  const SampledFunction phi(g, oracle::coherent(0, 0));
  const Matrix V = stft(phi, phi).values();
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> idx(16, 48);
  for (int t = 0; t < 20; ++t) {
    const int j = idx(rng), k = idx(rng);
    const double x = g.node(j), xi = g.node(k);
    // Direct quadrature of the defining sum.
    Complex direct = 0.0;
    for (int m = 0; m < 64; ++m) {
      const double y = g.node(m);
      direct += phi.values()(m) * std::conj(oracle::coherent(0, 0)(y - x)) * std::polar(1.0, -y * xi);
    }
    direct *= g.spacing() / std::sqrt(2 * kPi);
    CHECK(std::abs(V(j, k) - direct) < 1e-8);
    CHECK(std::abs(std::abs(V(j, k)) - std::exp(-(x * x + xi * xi) / 4) / std::sqrt(2 * kPi)) < 1e-8);
  }
}

TEST_CASE("STFT at the origin is a scaled inner product") {
  const Grid1D g = Grid1D::self_dual(64);
  const SampledFunction f(g, oracle::coherent(0.5, -1.0));
  const SampledFunction phi(g, oracle::coherent(-0.3, 0.4, 1.2));
  const Complex v00 = stft(f, phi, 1e-3).values()(32, 32);
  const Complex ip = g.spacing() * phi.values().dot(f.values());
  CHECK(std::abs(v00 - ip / std::sqrt(2 * kPi)) < 1e-14);
  const SampledFunction zero(g, Vector(Vector::Zero(64)));
  CHECK(stft(zero, phi, 1e-3).values().cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(stft(f, zero), std::invalid_argument);
}

TEST_CASE("STFT covariance under grid-aligned translation") {
  const Grid1D g = Grid1D::self_dual(64);
  const int shift = 3;
  const double a = shift * g.spacing();
  const SampledFunction phi(g, oracle::coherent(0, 0));
  const SampledFunction f(g, oracle::coherent(0.2, 0.5));
  const auto f0 = oracle::coherent(0.2, 0.5);
  const SampledFunction fa(g, [&](double t) { return f0(t - a); });
  const Matrix V = stft(f, phi, 1e-3).values(), Va = stft(fa, phi, 1e-3).values();
  double worst = 0.0;
  for (int j = shift; j < 64; ++j)
    for (int k = 0; k < 64; ++k)
      worst = std::max(worst, std::abs(Va(j, k) - std::polar(1.0, -a * g.node(k)) * V(j - shift, k)));
  CHECK(worst < 1e-10);
}

TEST_CASE("STFT rejects inputs beyond the aliasing budget") {
  const Grid1D g = Grid1D::self_dual(32);
  const SampledFunction wide(g, oracle::coherent(0, 0, 4.0));
  const SampledFunction phi(g, oracle::coherent(0, 0));
  CHECK_THROWS_AS(stft(wide, phi), AliasingError);
  CHECK_NOTHROW(stft(wide, phi, std::nullopt));
}

TEST_CASE("Wigner distribution of the normalized Gaussian") {
  const Grid1D g = Grid1D::self_dual(64);
  const SampledFunction phi(g, oracle::coherent(0, 0));
  const Matrix W = wigner(phi, phi, 0.5).values();
  // Closed form: (2/pi)^{1/2} exp(-(x^2 + xi^2)).
  const Matrix expect = oracle::sample(g, std::function<Complex(double, double)>([](double x, double xi) {
                                         return Complex(std::sqrt(2 / kPi) * std::exp(-(x * x + xi * xi)));
                                       }));
  CHECK((W - expect).cwiseAbs().maxCoeff() < 1e-8);
  // Direct quadrature oracle at one node.
  const int i = 30, j = 35;
  Complex direct = 0.0;
  for (int m = -200; m <= 200; ++m) {
    const double y = 0.05 * m;
    direct += oracle::coherent(0, 0)(g.node(i) + y / 2) * oracle::coherent(0, 0)(g.node(i) - y / 2) *
              std::polar(1.0, -y * g.node(j));
  }
  direct *= 0.05 / std::sqrt(2 * kPi);
  CHECK(std::abs(W(i, j) - direct) < 1e-8);
}

TEST_CASE("Wigner marginal and total mass") {
  const double ratios[] = {32, 64};
  double mass[2];
  for (int r = 0; r < 2; ++r) {
    const Grid1D g = Grid1D::self_dual(static_cast<int>(ratios[r]));
    const SampledFunction f(g, oracle::coherent(0.4, -0.6, 0.9));
    const Matrix W = wigner(f, f, 0.5).values();
    const double h = g.spacing();
    // int W d xi = (2 pi)^{1/2} |f(x)|^2
    for (int i = 0; i < g.size(); ++i)
      CHECK(std::abs(h * W.row(i).sum() - std::sqrt(2 * kPi) * std::norm(f.values()(i))) < 1e-9);
    mass[r] = std::real(h * h * W.sum()) / std::pow(f.l2_norm(), 2);
  }
  CHECK(mass[0] == doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-9));
  CHECK(std::abs(mass[0] - mass[1]) < 1e-6);
}

TEST_CASE("Wigner distribution at A = 1/2 is real") {
  const Grid1D g = Grid1D::self_dual(32);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n01;
  Vector v(32);
  for (int k = 0; k < 32; ++k) v(k) = Complex(n01(rng), n01(rng)) * std::exp(-g.node(k) * g.node(k) / 4);
  const SampledFunction f(g, v);
  CHECK(wigner(f, f, 0.5).values().imag().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Wigner argument checks") {
  const Grid1D g = Grid1D::self_dual(16);
  const SampledFunction f(g, Vector(Vector::Ones(16)));
  CHECK_THROWS_AS(wigner(f, f, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(wigner(f, f, 0.25), std::domain_error);
}

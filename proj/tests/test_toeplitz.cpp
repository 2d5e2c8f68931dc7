#include "doctest.h"
#include "oracles.hpp"
#include "phasecalc/ensembles.hpp"
#include "phasecalc/tfa.hpp"
#include "phasecalc/toeplitz.hpp"

using namespace phasecalc;

namespace {
SampledFunction unit_gaussian(const Grid1D& g) {
  return SampledFunction(g, [](double x) { return Complex(std::pow(kPi, -0.25) * std::exp(-0.5 * x * x)); });
}
}  // namespace

TEST_CASE("constant symbol gives a multiple of the identity on resolved data") {
  const Grid1D g = Grid1D::self_dual(64);
  const PhaseGrid pg(g, 1);
  const SampledFunction phi = unit_gaussian(g);
  const SampledFunction f(g, oracle::coherent(0.5, -1.0, 1.0));
  for (const auto& T : {toeplitz_stft_form(SampledSymbol::constant(pg, 1.0), phi),
                        toeplitz_weyl_form(SampledSymbol::constant(pg, 1.0), phi)}) {
    const Vector Tf = T.apply(f).values();
    CHECK((Tf - f.values()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("STFT and Weyl forms agree") {
  const Grid1D g = Grid1D::self_dual(32);
  const PhaseGrid pg(g, 1);
  const SampledFunction phi = unit_gaussian(g);
  std::mt19937_64 rng(5);
  const auto mix = oracle::random_mixture(rng, 3, 1.5, 0.6, 1.4);
  const SampledSymbol a(pg, oracle::sample(g, mix));
  const Matrix A = toeplitz_stft_form(a, phi).entries();
  const Matrix B = toeplitz_weyl_form(a, phi).entries();
  CHECK((A - B).norm() / A.norm() < 1e-9);
}

TEST_CASE("STFT form is Hermitian and positive for positive symbols") {
  const Grid1D g = Grid1D::self_dual(24);
  const PhaseGrid pg(g, 1);
  const SampledFunction phi = unit_gaussian(g);
  const SampledSymbol a(pg, Matrix(bracket_power(2).sample(pg).cast<Complex>()));
  const Matrix M = toeplitz_stft_form(a, phi).entries();
  CHECK((M - M.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * M.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("Gaussian split factorizes and recovers c") {
  // Resolution needs (mu_i + nu_i) h^2 well below pi^2 / 25.
  const PhaseGrid pg(Grid1D::self_dual(64), 1);
  for (std::array<double, 2> l : {std::array<double, 2>{0.5, 0.5}, {0.25, 1.0}, {0.8, 0.5}}) {
    const GaussianSplit s = gaussian_split(l, pg);
    CHECK(s.mu[0] * s.mu[1] == doctest::Approx(1.0));
    for (int i = 0; i < 2; ++i) CHECK(s.mu[i] * s.nu[i] / (s.mu[i] + s.nu[i]) == doctest::Approx(l[i]));
    CHECK(s.factorization_residual < 1e-8);
    CHECK(s.c_measured == doctest::Approx(s.c).epsilon(1e-8));
  }
  CHECK_THROWS_AS(gaussian_split({1.0, 1.0}, pg), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_split({2.0, 0.6}, pg), std::invalid_argument);
}

TEST_CASE("Weyl symbol identity for Gaussian-smoothed weights") {
  for (auto [n, l] : {std::pair{32, std::array<double, 2>{0.5, 0.5}}, {64, {0.25, 1.0}}}) {
    const IdentityResidual r = toeplitz_weyl_symbol_identity(l, bracket_power(2), PhaseGrid(Grid1D::self_dual(n), 1));
    INFO("lambda = " << l[0] << ", " << l[1] << " residual " << r.residual);
    CHECK(r.residual < 1e-8);
  }
}

TEST_CASE("Toeplitz norm equivalence and injectivity") {
  for (int n : {48, 64}) {
    const Grid1D g = Grid1D::self_dual(n);
    auto ens = hermite_ensemble(g, 6);
    auto coh = coherent_ensemble(g, 6, 11, 1.0);
    ens.insert(ens.end(), coh.begin(), coh.end());
    const SampledFunction phi = unit_gaussian(g);
    const RatioStats st = toeplitz_norm_equivalence(bracket_power(2), phi, ens, 10.0, 5e-2);
    INFO("N = " << n << " min " << st.min << " max " << st.max);
    CHECK(st.pass());
    const OperatorMatrix T = toeplitz(SampledSymbol(PhaseGrid(g, 1), Matrix(bracket_power(2).sample(PhaseGrid(g, 1)).cast<Complex>())), phi);
    CHECK(restricted_min_singular_value(T, 8) > 1e-3);
  }
}

TEST_CASE("zero symbol and trivial weight") {
  const Grid1D g = Grid1D::self_dual(48);
  const PhaseGrid pg(g, 1);
  const SampledFunction phi = unit_gaussian(g);
  CHECK(toeplitz_stft_form(SampledSymbol::constant(pg, 0.0), phi).entries().cwiseAbs().maxCoeff() == 0.0);
  CHECK(toeplitz_weyl_form(SampledSymbol::constant(pg, 0.0), phi).entries().cwiseAbs().maxCoeff() == 0.0);
  auto ens = hermite_ensemble(g, 4);
  const RatioStats st = toeplitz_norm_equivalence(constant_weight(1.0), phi, ens, 10.0, 5e-2);
  for (double r : st.ratios) CHECK(r == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("window constant is stable under refinement") {
  double first = 0.0;
  for (int n : {32, 64, 128}) {
    const GaussianSplit s = gaussian_split({0.5, 0.5}, PhaseGrid(Grid1D::self_dual(n), 1));
    CHECK(s.mu[0] == doctest::Approx(1.0));
    CHECK(s.nu[0] == doctest::Approx(1.0));
    if (n == 32) first = s.c_measured;
    CHECK(std::abs(s.c_measured - first) < 1e-6);
  }
}

TEST_CASE("identity with trivial weight and diagonal positivity") {
  const PhaseGrid pg(Grid1D::self_dual(32), 1);
  CHECK(toeplitz_weyl_symbol_identity({0.5, 0.5}, constant_weight(1.0), pg).residual < 1e-8);

  const Grid1D g = Grid1D::self_dual(48);
  const PhaseGrid pg48(g, 1);
  const OperatorMatrix T = toeplitz(SampledSymbol(pg48, Matrix(bracket_power(2).sample(pg48).cast<Complex>())),
                                    unit_gaussian(g));
  for (const auto& m : hermite_ensemble(g, 6)) CHECK(std::real(inner(T.apply(m.f), m.f)) > 0.0);
}

TEST_CASE("Gaussian smoothing of a moderate weight stays comparable") {
  const Grid1D g = Grid1D::self_dual(64);
  const PhaseGrid pg(g, 1);
  const GaussianPhaseWeight Phi({0.5, 0.5});
  const RealMatrix w = bracket_power(2).sample(pg);
  const Matrix sm = periodic_convolve(w.cast<Complex>(), Phi.sample(g), g.spacing());
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) {
      if (std::hypot(g.node(i), g.node(j)) > 5.0) continue;
      const double r = std::real(sm(i, j)) / w(i, j);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  MESSAGE("smoothed ratio range [" << lo << ", " << hi << "]");
  CHECK(lo > 0.0);
  CHECK(hi / lo < 10.0);
}

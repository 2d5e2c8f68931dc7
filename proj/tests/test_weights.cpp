#include "doctest.h"
#include "oracles.hpp"
#include "phasecalc/weights.hpp"

using namespace phasecalc;

TEST_CASE("builtin weights evaluate their formulas") {
  CHECK(bracket_power(2)(1.0, 1.0) == doctest::Approx(3.0));
  CHECK(subexp(1, 2)(4.0, 0.0) == doctest::Approx(std::exp(2.0)));
  const Weight one = product(bracket_power(1), reciprocal(bracket_power(1)));
  const PhaseGrid pg = make_grid(16, 1);
  CHECK((one.sample(pg).array() - 1.0).abs().maxCoeff() < 1e-14);
  CHECK(bracket_power(2).tag() == WeightClass::P);
  CHECK(subexp(1, 2).tag() == WeightClass::P_Es);
  CHECK(subexp(1, 2, true).tag() == WeightClass::P0_Es);
}

TEST_CASE("builtin weight argument checks") {
  CHECK_THROWS_AS(subexp(-1, 2), std::invalid_argument);
  const Weight w = subexp(1, 0.5);
  REQUIRE(w.warnings().size() == 1);
  CHECK(w.warnings()[0].find("s < 1") != std::string::npos);
  CHECK(subexp(1, 2).warnings().empty());
}

TEST_CASE("subexp and bracket bounds on samples") {
  const PhaseGrid pg = make_grid(32, 1);
  const Grid1D& g = pg.axis();
  const Weight w = subexp(0.7, 2), b = bracket_power(-3);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      const double r = std::hypot(g.node(i), g.node(j));
      CHECK(w(g.node(i), g.node(j)) <= std::exp(0.7 * std::sqrt(r)) * (1 + 1e-14));
      CHECK(w(g.node(i), g.node(j)) >= std::exp(-0.7 * std::sqrt(r)));
      // Polynomial moderation with r = |t|: <X>^t <= <X>^{|t|}.
      CHECK(b(g.node(i), g.node(j)) <= std::pow(1 + r * r, 1.5) * (1 + 1e-14));
    }
}

TEST_CASE("Peetre constant") {
  const PhaseGrid pg = make_grid(32, 1);
  const SampleSet samples = standard_sample_set(pg);
  CHECK(samples.seed == kDefaultSampleSeed);
  // <.> is even and >= 1 but not submultiplicative (x = y = (0.5, 0)).
  CHECK_THROWS_AS(certify_moderate(bracket_power(1), bracket_power(1), samples), std::domain_error);
  ModerationOptions opt;
  opt.check_submultiplicative = false;
  const auto cert = certify_moderate(bracket_power(1), bracket_power(1), samples, opt);
  CHECK(cert.C_hat <= std::sqrt(2.0) * (1 + 1e-12));
  CHECK(cert.C_hat > 1.0);
  CHECK(cert.lower_chain_holds);
  CHECK(cert.sample_count == samples.pairs.size());
}

TEST_CASE("constant weight against any v") {
  const PhaseGrid pg = make_grid(16, 1);
  const SampleSet samples = standard_sample_set(pg, 7, 100);
  const auto cert = certify_moderate(constant_weight(), subexp(0.5, 1), samples);
  CHECK(cert.C_hat <= 1.0);
  CHECK(cert.C_hat == doctest::Approx(1.0));
}

TEST_CASE("subadditivity of |X|^{1/2}") {
  const PhaseGrid pg = make_grid(32, 1);
  const SampleSet samples = standard_sample_set(pg);
  const auto cert = certify_moderate(subexp(1, 2), subexp(1, 2), samples);
  CHECK(cert.C_hat <= 1 + 1e-12);
}

TEST_CASE("v must be at least 1") {
  const PhaseGrid pg = make_grid(16, 1);
  const SampleSet samples = standard_sample_set(pg, 1, 10);
  CHECK_THROWS_WITH_AS(certify_moderate(constant_weight(), bracket_power(-1), samples),
                       doctest::Contains("v < 1"), std::domain_error);
}

TEST_CASE("sample sets are reproducible") {
  const PhaseGrid pg = make_grid(16, 1);
  const SampleSet a = standard_sample_set(pg, 5), b = standard_sample_set(pg, 5);
  REQUIRE(a.pairs.size() == b.pairs.size());
  for (std::size_t k = 0; k < a.pairs.size(); k += 97) CHECK(a.pairs[k].second == b.pairs[k].second);
  const SampleSet d2 = standard_sample_set(make_grid(16, 2), 5, 10);
  CHECK(d2.pairs.front().first.size() == 4);
}

TEST_CASE("Gevrey moderation") {
  const SampleSet scan = radial_scan_sample_set(2, 1e8);
  SUBCASE("polynomial weights pass every rate") {
    const auto res = certify_gevrey_moderate(bracket_power(2), 2, {0.1, 0.5, 1.0}, scan);
    for (const auto& r : res) CHECK(r.pass);
    CHECK(gevrey_claim_holds(res, WeightClass::P0_Es));
  }
  SUBCASE("same rate passes with constant 1") {
    const auto res = certify_gevrey_moderate(subexp(1, 2), 2, {1.0}, scan);
    CHECK(res[0].pass);
    CHECK(std::exp(res[0].log_C) <= 1 + 1e-12);
  }
  SUBCASE("a smaller rate diverges along x = 0") {
    const auto res = certify_gevrey_moderate(subexp(1, 2), 2, {0.5, 1.0}, scan);
    CHECK_FALSE(res[0].pass);
    CHECK(res[0].log_C > 1000.0);
    CHECK_FALSE(gevrey_claim_holds(res, WeightClass::P0_Es));
    CHECK(gevrey_claim_holds(res, WeightClass::P_Es));
  }
}

TEST_CASE("mollification preserves constants") {
  const PhaseGrid pg = make_grid(32, 1);
  const SampledSymbol bump(pg, [](double x, double xi) { return Complex(std::exp(-2 * (x * x + xi * xi))); });
  const auto m = mollify(constant_weight(), bump);
  CHECK(std::abs(m.c1 - 1) < 1e-10);
  CHECK(std::abs(m.c2 - 1) < 1e-10);
}

TEST_CASE("mollified bracket squared") {
  const PhaseGrid pg = make_grid(64, 1);
  const Grid1D& g = pg.axis();
  const SampledSymbol bump(pg, [](double x, double xi) { return Complex(std::exp(-(x * x + xi * xi)) / kPi); });
  const Weight w = bracket_power(2);
  const auto m = mollify(w, bump);
  CHECK(m.c1 > 0);
  CHECK(std::isfinite(m.c2));
  // Closed form: <X>^2 + 1.
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      const double x = g.node(i), xi = g.node(j);
      if (std::hypot(x, xi) > 5) continue;
      const double closed = 2 + x * x + xi * xi;
      CHECK(m.samples(i, j) == doctest::Approx(closed).epsilon(1e-10));
      const double ratio = m.samples(i, j) / w(x, xi);
      CHECK(ratio >= 1.0);
      CHECK(ratio <= 2.0 + 1e-12);
    }
  // Off-grid direct quadrature and derivative bound.
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-4, 4);
  const double step = 1e-4;
  for (int k = 0; k < 10; ++k) {
    const double x = u(rng), xi = u(rng);
    CHECK(m.weight(x, xi) == doctest::Approx(2 + x * x + xi * xi).epsilon(1e-9));
    const double dx = (m.weight(x + step, xi) - m.weight(x - step, xi)) / (2 * step);
    CHECK(dx == doctest::Approx(2 * x).epsilon(1e-5));
    CHECK(std::abs(dx) <= 3 * m.weight(x, xi));
  }
}

TEST_CASE("mollify rejects signed bumps") {
  const PhaseGrid pg = make_grid(32, 1);
  const SampledSymbol bad(pg, [](double x, double xi) { return Complex(std::exp(-2 * (x * x + xi * xi)) * x); });
  CHECK_THROWS_AS(mollify(constant_weight(), bad), std::invalid_argument);
}

TEST_CASE("log weights") {
  const Weight t0 = log_weight(constant_weight());
  CHECK(t0(0.3, 2.0) == 1.0);
  const double e = std::exp(1.0);
  CHECK(log_weight(bracket_power(2))(e, 0.0) == doctest::Approx(1 + std::log(1 + e * e)));
  CHECK(log_weight(bracket_power(2))(e, 0.0) == doctest::Approx(3.126).epsilon(1e-3));

  const PhaseGrid pg = make_grid(32, 1);
  const SampleSet samples = standard_sample_set(pg);
  ModerationOptions opt;
  opt.check_submultiplicative = false;
  const auto base = certify_moderate(bracket_power(1), bracket_power(1), samples, opt);
  const auto cert = certify_moderate(log_weight(bracket_power(1)), log_weight(bracket_power(1)), samples, opt);
  CHECK(cert.C_hat <= log_weight_constant(base.C_hat) * (1 + 1e-12));
  CHECK(cert.C_hat <= 1 + std::log(std::sqrt(2.0)));
  CHECK(log_weight_constant(0.5) == 1.0);
}

TEST_CASE("windowed weights") {
  const PhaseGrid pg = make_grid(32, 1);
  const Grid1D& g = pg.axis();
  const Weight w = windowed(bracket_power(2), pg);
  CHECK(w(1.0, 1.0) == doctest::Approx(3.0));
  CHECK(w(g.half_width(), 0.0) == 1.0);
  CHECK(w(g.node(0), g.node(16)) == 1.0);
}

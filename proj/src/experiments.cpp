#include "phasecalc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "exact_oracles.hpp"
#include "phasecalc/combinat.hpp"
#include "phasecalc/confine.hpp"
#include "phasecalc/ensembles.hpp"
#include "phasecalc/modspace.hpp"
#include "phasecalc/quantize.hpp"
#include "phasecalc/svg.hpp"
#include "phasecalc/symgroup.hpp"
#include "phasecalc/tfa.hpp"
#include "phasecalc/toeplitz.hpp"
#include "phasecalc/weylalg.hpp"

namespace phasecalc {

namespace {

struct Context {
  const ExperimentConfig& cfg;
  const RunOptions& options;
  SuiteResult& out;

  void add(std::string name, std::optional<int> criterion, double measured, std::string relation, double threshold) {
    out.checks.push_back(make_check(std::move(name), criterion, measured, std::move(relation), threshold));
  }
  std::mt19937_64 rng(std::uint64_t offset) const { return std::mt19937_64(cfg.ensembles.seed + offset); }
};

// sum_k c_k exp(-w_k |X - X_k|^2) with seeded centres, rates and coefficients.
SampledSymbol random_mixture(const PhaseGrid& pg, std::mt19937_64& rng, double max_centre, double w_lo, double w_hi) {
  std::uniform_real_distribution<double> centre(-max_centre, max_centre), rate(w_lo, w_hi), unit(-1.0, 1.0);
  std::vector<std::array<double, 3>> p;
  std::vector<Complex> c;
  for (int k = 0; k < 3; ++k) {
    const double x0 = centre(rng), xi0 = centre(rng), w = rate(rng);
    p.push_back({x0, xi0, w});
    const double re = unit(rng), im = unit(rng);
    c.emplace_back(re, im);
  }
  return SampledSymbol(pg, [p, c](double x, double xi) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
      acc += c[k] * std::exp(-p[k][2] * ((x - p[k][0]) * (x - p[k][0]) + (xi - p[k][1]) * (xi - p[k][1])));
    return acc;
  });
}

SampledFunction coherent(const Grid1D& g, double x0, double k0, double width) {
  return SampledFunction(g, [=](double x) { return coherent_state(x, x0, k0, width); });
}

std::vector<EnsembleMember> ensemble(const Context& ctx, const Grid1D& g) {
  auto ens = hermite_ensemble(g, ctx.cfg.ensembles.hermite_count);
  auto coh = coherent_ensemble(g, ctx.cfg.ensembles.random_coherent_count, ctx.cfg.ensembles.seed, 1.0);
  ens.insert(ens.end(), coh.begin(), coh.end());
  return ens;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double rel_max(const Matrix& a, const Matrix& b) { return max_abs(a - b) / std::max(max_abs(b), 1e-300); }

SampledSymbol from_real(const PhaseGrid& pg, const RealMatrix& w) { return SampledSymbol(pg, Matrix(w.cast<Complex>())); }

void add_heatmap(Context& ctx, const std::string& name, const Grid1D& g, const Matrix& symbol, const std::string& title) {
  if (!ctx.options.figures) return;
  ctx.out.figures.push_back({name, heatmap_svg(symbol.cwiseAbs().transpose(), phase_axes(g, title))});
}

// Transforms.
void criterion1(Context& ctx) {
  const Grid1D g = Grid1D::self_dual(64);
  const PhaseGrid pg(g, 1);
  const SampledFunction gauss(g, [](double x) { return Complex(std::exp(-x * x / 2)); });
  ctx.add("Gaussian Fourier fixed point, N=64", 1, max_abs(fourier(gauss).values() - gauss.values()), "<=", 1e-10);

  auto rng = ctx.rng(101);
  std::normal_distribution<double> n01;
  Vector v(64);
  for (Index k = 0; k < 64; ++k) v(k) = Complex(n01(rng), n01(rng));
  const SampledFunction f(g, v);
  ctx.add("Parseval on a random vector, N=64", 1, std::abs(fourier(f).l2_norm() - f.l2_norm()) / f.l2_norm(), "<=",
          1e-10);

  // Resolved symbols: both a and its transform, read at dilated nodes, stay inside the grid.
  double inv = 0.0;
  const SampledSymbol radial(pg, [](double x, double xi) { return Complex(std::exp(-(x * x + xi * xi))); });
  inv = rel_max(symplectic_fourier(symplectic_fourier(radial.values())), radial.values());
  for (int t = 0; t < 5; ++t) {
    const Matrix a = random_mixture(pg, rng, 0.25, 1.2, 1.6).values();
    inv = std::max(inv, rel_max(symplectic_fourier(symplectic_fourier(a)), a));
  }
  ctx.add("symplectic Fourier involution, 6 resolved symbols, N=64", 1, inv, "<=", 1e-10);

  if (ctx.options.figures) {
    const PhaseGrid cg = ctx.cfg.grid();
    const SampledFunction phi = gaussian_window(cg.axis());
    add_heatmap(ctx, "wigner_gaussian", cg.axis(), wigner(phi, phi).values(), "|W(phi, phi)|, Gaussian phi");
    const auto h3 = hermite_ensemble(cg.axis(), 4).back().f;
    add_heatmap(ctx, "stft_hermite3", cg.axis(), stft(h3, phi, std::nullopt).values(), "|V_phi h_3|");
  }
}

// Quantization round trip and change of quantization.
void criterion2(Context& ctx) {
  const PhaseGrid pg = ctx.cfg.grid();
  const int n = pg.n();
  auto rng = ctx.rng(201);
  std::normal_distribution<double> n01;
  Matrix a(n, n);
  for (Index k = 0; k < a.size(); ++k) a.data()[k] = Complex(n01(rng), n01(rng));
  const SampledSymbol s(pg, a);
  const std::string tag = ", N=" + std::to_string(n);
  for (double A : {0.0, 0.25, 0.5, 1.0}) {
    const Matrix back = symbol_from_kernel(kernel_from_symbol(s, A), pg, A).values();
    char name[96];
    std::snprintf(name, sizeof name, "symbol-kernel-symbol round trip, A=%g", A);
    ctx.add(name + tag, 2, rel_max(back, a), "<=", 1e-12);
  }
  for (auto [A1, A2] : {std::pair{0.0, 0.5}, {0.25, 1.0}, {1.0, 0.0}, {0.5, 0.25}}) {
    const Matrix M1 = op_entries(a, A1);
    const Matrix M2 = op_entries(change_quantization(a, A1, A2), A2);
    char name[96];
    std::snprintf(name, sizeof name, "change of quantization %g -> %g keeps the matrix", A1, A2);
    ctx.add(name + tag, 2, rel_max(M2, M1), "<=", 1e-10);
  }
}

// Wigner pairing on random triples.
void criterion3(Context& ctx) {
  const PhaseGrid pg = make_grid(32, 1);
  const Grid1D& g = pg.axis();
  auto rng = ctx.rng(301);
  std::uniform_real_distribution<double> shift(-1.0, 1.0), width(0.8, 1.2);
  const double As[] = {0.0, 0.25, 0.5, 1.0};
  double worst = 0.0, worst_grid = 0.0;
  for (int t = 0; t < 10; ++t) {
    const SampledSymbol a = random_mixture(pg, rng, 1.5, 1.0, 1.0);
    const double fx = shift(rng), fk = shift(rng), fw = width(rng);
    const double hx = shift(rng), hk = shift(rng), hw = width(rng);
    const SampledFunction f = coherent(g, fx, fk, fw), h = coherent(g, hx, hk, hw);
    worst = std::max(worst, wigner_pairing_check(a, f, h, As[t % 4], 2).residual);
    worst_grid = std::max(worst_grid, wigner_pairing_check(a, f, h, As[t % 4]).residual);
  }
  ctx.add("Wigner pairing, 10 random triples, A in {0, 1/4, 1/2, 1}, N=32", 3, worst, "<=", 1e-8);
  ctx.add("same, phase-space integral on the N=32 grid itself", std::nullopt, worst_grid, "finite", 0.0);
}

// Product routes at N = 32.
void criterion4(Context& ctx) {
  const PhaseGrid pg = make_grid(32, 1);
  auto rng = ctx.rng(401);
  double route = 0, wf = 0, tf = 0;
  for (int t = 0; t < 3; ++t) {
    const SampledSymbol a = random_mixture(pg, rng, 0.3, 1.0, 1.0), b = random_mixture(pg, rng, 0.3, 1.0, 1.0);
    route = std::max(route, product_route_equivalence(a, b).residual);
    wf = std::max(wf, weyl_fourier_identity_check(a, b).residual);
    tf = std::max(tf, twisted_fourier_identity_check(a, b).residual);
  }
  const double tol = ctx.cfg.tolerances.route_tol;
  ctx.add("matrix route vs twisted-convolution route, N=32", 4, route, "<=", tol);
  ctx.add("symplectic Fourier of a Weyl product, N=32", 4, wf, "<=", tol);
  ctx.add("symplectic Fourier of a twisted convolution, N=32", 4, tf, "<=", tol);
  ctx.add("canonical commutator on central nodes, N=32", 4, commutator_check(pg).residual, "<=", 1e-8);
}

// Toeplitz forms.
void criterion5(Context& ctx) {
  const Grid1D g = Grid1D::self_dual(32);
  const PhaseGrid pg(g, 1);
  auto rng = ctx.rng(501);
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    const SampledSymbol a = random_mixture(pg, rng, 1.5, 0.5, 1.5);
    const SampledFunction phi = gaussian_window(g, 0.8 + 0.1 * t);
    const OperatorMatrix A = toeplitz_stft_form(a, phi), B = toeplitz_weyl_form(a, phi);
    const OperatorMatrix D(g, A.entries() - B.entries(), 0.5);
    worst = std::max(worst, D.operator_norm_2() / A.operator_norm_2());
  }
  ctx.add("STFT form vs Weyl form, 5 symbol/window pairs, N=32", 5, worst, "<=", 1e-7);

  const SampledFunction phi = gaussian_window(g);
  const auto one = SampledSymbol::constant(pg, 1.0);
  const Matrix I = Matrix::Identity(32, 32);
  ctx.add("Tp(1) = identity, STFT form, N=32", 5, max_abs(toeplitz_stft_form(one, phi).entries() - I), "<=", 1e-7);
  ctx.add("Tp(1) = identity, Weyl form, N=32", 5, max_abs(toeplitz_weyl_form(one, phi).entries() - I), "<=", 1e-7);

  const auto min_ratio = [](const Matrix& M) {
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix>((M + M.adjoint()) / 2.0).eigenvalues();
    return ev.minCoeff() / ev.cwiseAbs().maxCoeff();
  };
  std::vector<SampledSymbol> positive{from_real(pg, bracket_power(2).sample(pg)),
                                      from_real(pg, windowed(subexp(0.3, 2.0), pg).sample(pg))};
  for (int t = 0; t < 3; ++t)
    positive.emplace_back(pg, Matrix(random_mixture(pg, rng, 1.5, 0.5, 1.5).values().cwiseAbs2().cast<Complex>()));
  double lowest = kInf, lowest_weyl = kInf, gap = 0.0;
  for (const auto& a : positive) {
    const OperatorMatrix S = toeplitz_stft_form(a, phi), W = toeplitz_weyl_form(a, phi);
    lowest = std::min(lowest, min_ratio(S.entries()));
    lowest_weyl = std::min(lowest_weyl, min_ratio(W.entries()));
    const OperatorMatrix D(g, W.entries() - S.entries(), 0.5);
    gap = std::max(gap, D.operator_norm_2() / S.operator_norm_2());
  }
  ctx.add("min eigenvalue / scale for nonnegative symbols, N=32", 5, lowest, ">=", -1e-10);
  // Eigenvalues move by at most the operator-norm distance between the forms.
  ctx.add("same, Weyl form, bounded by its distance to the STFT form", std::nullopt, lowest_weyl, ">=", -gap);
}

// Gaussian identity.
void criterion6(Context& ctx) {
  const PhaseGrid pg = ctx.cfg.grid();
  const std::string tag = ", N=" + std::to_string(pg.n());
  const auto split = gaussian_split({0.5, 0.5}, pg);
  ctx.add("Gaussian semigroup factorization by FFT convolution" + tag, 6, split.factorization_residual, "<=", 1e-8);
  ctx.add("Weyl-Toeplitz identity, w0 = 1" + tag, 6,
          toeplitz_weyl_symbol_identity({0.5, 0.5}, constant_weight(1.0), pg).residual, "<=", 1e-6);
  ctx.add("Weyl-Toeplitz identity, w0 = <.>^2" + tag, 6,
          toeplitz_weyl_symbol_identity({0.5, 0.5}, bracket_power(2), pg).residual, "<=", 1e-6);
  ctx.add("window constant c, measured vs closed form" + tag, std::nullopt,
          std::abs(split.c_measured - split.c) / split.c, "<=", 1e-8);
}

// One-parameter groups.
void criterion7(Context& ctx) {
  const PhaseGrid pg = ctx.cfg.grid();
  const double tol = ctx.cfg.tolerances.group_tol;
  const std::string tag = ", N=" + std::to_string(pg.n());
  const std::vector<std::pair<std::string, Weight>> thetas{{"<.>", windowed(bracket_power(1), pg)},
                                                           {"exp(0.3|X|^1/2)", windowed(subexp(0.3, 2.0), pg)}};
  const char* stems[] = {"bracket1", "subexp"};
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const auto& [label, theta] = thetas[k];
    const auto p = EvolutionProblem::group(theta, pg);
    for (double t : {1.0, -1.0}) {
      const auto e = evolve_checked(p, t);
      const std::string at = (t > 0 ? " t=+1" : " t=-1");
      ctx.add("routes agree, theta=" + label + at + tag, 7, *e.route_residual, "<=", tol);
      ctx.add("ODE residual, theta=" + label + at + tag, std::nullopt, *e.ode_residual, "<=", 1e-5);
    }
    ctx.add("group law a(1/2)#a(1/2) = a(1), theta=" + label + tag, 7, group_law_check(p, 0.5, 0.5).residual, "<=",
            tol);
    const auto ip = inverse_pair(theta, pg);
    ctx.add("inverse pair a(1)#a(-1) = 1, theta=" + label + tag, 7, ip.ab_residual, "<=", tol);
    ctx.add("inverse pair a(-1)#a(1) = 1, theta=" + label + tag, 7, ip.ba_residual, "<=", tol);
    ctx.out.dumps.push_back({std::string("a_plus1_") + stems[k], ip.a.values(), dump_meta(pg, 0.5, "symbol")});
    ctx.out.dumps.push_back({std::string("a_minus1_") + stems[k], ip.b.values(), dump_meta(pg, 0.5, "symbol")});
    if (k == 0) add_heatmap(ctx, "symbol_a1_bracket1", pg.axis(), ip.a.values(), "|a(1)|, theta = windowed <.>");
  }
}

// Lifting isomorphism.
void criterion8(Context& ctx) {
  const std::vector<MixedNormSpec> specs{{2, 2}, {1, 1}, {kInf, 1}, {2.0 / 3, 2.0 / 3}};
  const double K = ctx.cfg.tolerances.ratio_K, budget = ctx.cfg.tolerances.alias_budget;
  std::vector<double> spread48;
  double round_trip = 0.0;
  std::vector<Bar> bars;
  for (int n : {48, 64}) {
    const Grid1D g = Grid1D::self_dual(n);
    const PhaseGrid pg(g, 1);
    const Weight w0 = windowed(bracket_power(2), pg);
    const auto ip = inverse_pair(w0, pg);
    const auto ens = ensemble(ctx, g);
    for (std::size_t k = 0; k < specs.size(); ++k) {
      const auto rep = lifting_report(ip, bracket_power(1), w0, specs[k], ens, K, budget);
      round_trip = std::max(round_trip, rep.round_trip);
      const std::string label = to_string(specs[k]);
      ctx.add("lifting ratio spread " + label + ", N=" + std::to_string(n), 8, rep.stats.spread(), "<=", K);
      if (n == 48) {
        spread48.push_back(rep.stats.spread());
      } else {
        ctx.add("lifting spread stability " + label + ", N=48->64", 8, std::abs(rep.stats.spread() / spread48[k] - 1.0),
                "<=", 0.2);
        bars.push_back({label, rep.stats.spread()});
      }
    }
  }
  ctx.add("round trip Op(b)Op(a)f = f, N=48 and 64", 8, round_trip, "<=", 1e-6);
  if (ctx.options.figures)
    ctx.out.figures.push_back({"lifting_ratios", bar_chart_svg(bars, "lifting ratio spread max/min, N=64", K)});
}

// Toeplitz norm equivalence.
void criterion9(Context& ctx) {
  const double K = ctx.cfg.tolerances.ratio_K, budget = ctx.cfg.tolerances.alias_budget;
  double spread[2];
  int k = 0;
  for (int n : {48, 64}) {
    const Grid1D g = Grid1D::self_dual(n);
    const PhaseGrid pg(g, 1);
    const SampledFunction phi = gaussian_window(g);
    const RatioStats st = toeplitz_norm_equivalence(bracket_power(2), phi, ensemble(ctx, g), K, budget);
    spread[k++] = st.spread();
    ctx.add("Toeplitz norm ratio spread, w=<.>^2, N=" + std::to_string(n), 9, st.spread(), "<=", K);
    const OperatorMatrix T = toeplitz(from_real(pg, bracket_power(2).sample(pg)), phi);
    ctx.add("restricted min singular value of Tp(<.>^2), N=" + std::to_string(n), std::nullopt,
            restricted_min_singular_value(T, 8), ">", 1e-3);
  }
  ctx.add("Toeplitz spread stability, N=48->64", 9, std::abs(spread[1] / spread[0] - 1.0), "<=", 0.2);
}

SampledSymbol bounded_oscillating(const PhaseGrid& pg) {
  const double L = pg.axis().half_width();
  return SampledSymbol(pg, [L](double x, double xi) {
    const Complex dev = std::exp(Complex(std::sin(x) * xi / (1 + x * x + xi * xi))) - 1.0;
    return 1.0 + central_cutoff(x, L) * central_cutoff(xi, L) * dev;
  });
}

// Confinement.
void criterion10(Context& ctx) {
  const PhaseGrid pg = ctx.cfg.grid();
  const Grid1D& g = pg.axis();
  const std::string tag = ", N=" + std::to_string(pg.n());
  const SampledFunction window = gaussian_window(g);
  const auto pu1 = partition_of_unity(window, g.spacing());
  const auto pu2 = partition_of_unity(window, 2 * g.spacing());
  ctx.add("partition-of-unity defect, step h" + tag, 10, pu1.defect, "<=", 1e-3);
  ctx.add("defect ratio step 2h / step h" + tag, 10, pu2.defect / pu1.defect, ">=", 2.0);
  ctx.add("projector idempotence" + tag, std::nullopt, pu1.idempotence, "<=", 1e-8);

  const SampledSymbol G(pg, [](double x, double xi) { return Complex(std::exp(-(x * x + xi * xi) / 2)); });
  const auto one = SampledSymbol::constant(pg, 1.0);
  const SampledSymbol osc(pg, [](double x, double xi) { return std::polar(1.0, std::sin(x + xi)); });
  const Weight w0 = windowed(bracket_power(2), pg);
  const auto ip = inverse_pair(w0, pg);
  const RealMatrix w_up = w0.sample(pg), w_down = reciprocal(w0).sample(pg);
  struct Localizer {
    std::string name;
    const SampledSymbol* a1;
    const SampledSymbol* a2;
    std::array<int, 2> Y, Z;
    const RealMatrix* w1;
    const RealMatrix* w2;
  };
  const std::vector<Localizer> suites{
      {"Gaussian pair, Z=Y", &one, &one, {0, 0}, {0, 0}, nullptr, nullptr},
      {"Gaussian pair, |Y-Z|=4 nodes", &one, &one, {0, 0}, {4, 0}, nullptr, nullptr},
      {"Gaussian pair, |Y-Z|=8 nodes", &one, &one, {0, 0}, {8, 0}, nullptr, nullptr},
      {"Gaussian pair, shifted", &one, &one, {2, -3}, {6, 1}, nullptr, nullptr},
      {"oscillating bounded factor", &osc, &one, {0, 0}, {4, 4}, nullptr, nullptr},
      {"inverse-pair factors a(1), a(-1)", &ip.a, &ip.b, {0, 0}, {4, 0}, &w_up, &w_down},
  };
  for (const auto& s : suites) {
    const auto p = confined_product_profile(G, G, *s.a1, *s.a2, s.Y, s.Z, 0.5, s.w1, s.w2);
    ctx.add("confined product decay rate r, " + s.name + tag, 10, p.r, ">", 0.0);
  }

  const double budget = ctx.cfg.tolerances.alias_budget;
  const int n = pg.n();
  auto stability = [&](const std::string& name, const std::function<SampledSymbol(const PhaseGrid&)>& sym,
                       const Weight& w, double b) {
    const PhaseGrid p1(Grid1D::self_dual(n), 1), p2(Grid1D::self_dual(2 * n), 1);
    const double h1 = class_diagnostic(sym(p1), w, 1.0, 2, b).h;
    const double h2 = class_diagnostic(sym(p2), w, 1.0, 2, b).h;
    ctx.add("class_diagnostic h stability, " + name + ", N=" + std::to_string(n) + "->" + std::to_string(2 * n), 10,
            std::abs(h2 / h1 - 1.0), "<=", 0.2);
  };
  stability("a(1) of windowed <.>", [](const PhaseGrid& p) {
    return evolve(EvolutionProblem::group(windowed(bracket_power(1), p), p), 1.0).symbol;
  }, bracket_power(1), budget);
  stability("bounded oscillating symbol", bounded_oscillating, constant_weight(1.0), budget);
  // The cutoff transition of a windowed polynomial weight needs a wider band budget.
  stability("windowed <.>^2", [](const PhaseGrid& p) { return from_real(p, windowed(bracket_power(2), p).sample(p)); },
            bracket_power(2), 0.3);
}

// Exact combinatorics.
void criterion11(Context& ctx) {
  using namespace combinat;
  long bad = 0;
  for (int n = 0; n <= 40; ++n)
    for (int k = 0; k <= 40; ++k) bad += !binomial_sum(n, k).equal();
  ctx.add("binomial sum closed form, n,k <= 40", 11, static_cast<double>(bad), "==", 0.0);

  bad = 0;
  for (int gm = 0; gm <= 30; ++gm)
    for (int j = 1; j <= 10; ++j) bad += !s_recursion(gm, j).equal();
  ctx.add("S recursion closed form, gamma <= 30, j <= 10", 11, static_cast<double>(bad), "==", 0.0);

  long count_bad = 0, visit_bad = 0, cases = 0;
  for (int d = 1; d <= 3; ++d)
    for (int k = 1; k <= 5; ++k) {
      std::vector<int> c(d, 0);
      std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == d) {
          const MultiIndex alpha(c);
          const auto tuples = exact_oracle::brute_tuples(alpha, k);
          count_bad += composition_count(alpha, k) != tuples.size();
          std::size_t visited = 0, nonzero = 0, visited_nonzero = 0;
          for_each_composition(alpha, k, false, [&](const std::vector<MultiIndex>&) { ++visited; });
          for_each_composition(alpha, k, true, [&](const std::vector<MultiIndex>&) { ++visited_nonzero; });
          for (const auto& t : tuples)
            nonzero += std::all_of(t.begin(), t.end(), [](const MultiIndex& b) { return !b.is_zero(); });
          visit_bad += (visited != tuples.size()) + (visited_nonzero != nonzero);
          ++cases;
          return;
        }
        for (int v = 0; v <= left; ++v) {
          c[pos] = v;
          rec(pos + 1, left - v);
        }
      };
      rec(0, 6);
    }
  ctx.add("composition_count vs brute force, " + std::to_string(cases) + " lattice cases", 11,
          static_cast<double>(count_bad), "==", 0.0);
  ctx.add("composition enumeration vs brute force, " + std::to_string(cases) + " lattice cases", 11,
          static_cast<double>(visit_bad), "==", 0.0);

  auto rng = ctx.rng(1101);
  std::uniform_int_distribution<int> coef(-4, 4), deg(1, 4), den(1, 5);
  long fdb_bad = 0, fdb_cases = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> f(deg(rng) + 1);
    for (auto& v : f) v = Rational(coef(rng), den(rng));
    exact_oracle::Poly gp;
    const int dg = deg(rng);
    for (int a = 0; a <= dg; ++a)
      for (int b = 0; a + b <= dg; ++b) gp[{a, b}] = Rational(coef(rng), den(rng));
    const Rational x(coef(rng), den(rng)), y(coef(rng), den(rng));
    const auto fg = exact_oracle::compose(f, gp);
    const Rational t = exact_oracle::eval(gp, x, y);
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 4; ++b) {
        std::vector<Rational> outer;
        for (int k = 0; k <= a + b; ++k) outer.push_back(exact_oracle::eval_derivative(f, k, t));
        std::map<MultiIndex, Rational> inner;
        for (int p = 0; p <= a; ++p)
          for (int q = 0; q <= b; ++q) inner[{p, q}] = exact_oracle::eval(exact_oracle::derive(gp, p, q), x, y);
        fdb_bad += faa_di_bruno(outer, inner, MultiIndex{a, b}) != exact_oracle::eval(exact_oracle::derive(fg, a, b), x, y);
        ++fdb_cases;
      }
  }
  ctx.add("Faa di Bruno vs symbolic composition, 20 polynomial pairs (" + std::to_string(fdb_cases) + " derivatives)",
          11, static_cast<double>(fdb_bad), "==", 0.0);

  long fs_bad = 0;
  for (int n = 1; n <= 10; ++n) {
    const auto r = factorial_sum_bound(MultiIndex{n}, 1.0);
    fs_bad += !(r.exact && r.value_exact <= Rational(r.bound) && r.bound == boost::multiprecision::pow(BigInt(16), n));
  }
  ctx.add("factorial sum <= 16^|alpha|, d=1, |alpha| <= 10", 11, static_cast<double>(fs_bad), "==", 0.0);
  ctx.add("factorial sum at alpha=3 equals 19/3", std::nullopt,
          static_cast<double>(factorial_sum_bound(MultiIndex{3}, 1.0).value_exact != Rational(19, 3)), "==", 0.0);
}

// Weight certification.
void criterion12(Context& ctx) {
  const PhaseGrid pg = ctx.cfg.grid();
  const std::string tag = ", N=" + std::to_string(pg.n());
  const SampleSet samples = standard_sample_set(pg, kDefaultSampleSeed);
  ModerationOptions no_sub;
  no_sub.check_submultiplicative = false;
  const auto peetre = certify_moderate(bracket_power(1), bracket_power(1), samples, no_sub);
  ctx.add("Peetre constant for <.>" + tag, 12, peetre.C_hat, "<=", std::sqrt(2.0));
  const auto sub = certify_moderate(subexp(1.0, 2.0), subexp(1.0, 2.0), samples);
  ctx.add("subadditivity constant for exp(|X|^1/2)" + tag, 12, sub.C_hat, "<=", 1 + 1e-12);

  const SampledSymbol bump(pg, [](double x, double xi) { return Complex(std::exp(-(x * x + xi * xi)) / kPi); });
  for (const auto& [label, w] : {std::pair{std::string("<.>^2"), bracket_power(2)},
                                 std::pair{std::string("exp(0.3|X|^1/2)"), subexp(0.3, 2.0)}}) {
    const auto m = mollify(w, bump);
    ctx.add("mollified " + label + " lower ratio c1" + tag, 12, m.c1, ">", 0.0);
    ctx.add("mollified " + label + " upper ratio c2" + tag, 12, m.c2, "finite", 0.0);
  }

  const auto logc = certify_moderate(log_weight(bracket_power(1)), log_weight(bracket_power(1)), samples, no_sub);
  ctx.add("log-weight moderation constant vs 1 + log C" + tag, 12, logc.C_hat, "<=",
          log_weight_constant(peetre.C_hat));
}

// Window equivalence for configured weights.
void modspace_suite(Context& ctx, const SuiteRequest& req) {
  const PhaseGrid pg = ctx.cfg.grid();
  const Grid1D& g = pg.axis();
  const std::string tag = ", N=" + std::to_string(pg.n());
  const auto& w1 = ctx.cfg.window(req.windows.at(0));
  const auto& w2 = ctx.cfg.window(req.windows.at(1));
  const SampledFunction phi1 = gaussian_window(g, w1.width), phi2 = gaussian_window(g, w2.width);
  const auto ens = ensemble(ctx, g);
  for (const auto& wid : req.weights) {
    const Weight w = make_weight(ctx.cfg.weight(wid));
    for (const MixedNormSpec& spec : {MixedNormSpec{2, 2}, MixedNormSpec{1, 1}, MixedNormSpec{kInf, 1}}) {
      const RatioStats st = window_equivalence_report(ens, phi1, phi2, w, spec, ctx.cfg.tolerances.ratio_K,
                                                      ctx.cfg.tolerances.alias_budget);
      ctx.add("window equivalence " + w1.id + "/" + w2.id + ", weight " + wid + ", " + to_string(spec) + tag,
              std::nullopt, st.spread(), "<=", ctx.cfg.tolerances.ratio_K);
    }
  }
}

using CriterionFn = void (*)(Context&);
constexpr CriterionFn kCriteria[] = {criterion1, criterion2, criterion3,  criterion4,  criterion5,  criterion6,
                                     criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};

}  // namespace

Check make_check(std::string name, std::optional<int> criterion, double measured, std::string relation,
                 double threshold) {
  bool pass = false;
  if (relation == "<=") pass = measured <= threshold;
  else if (relation == ">=") pass = measured >= threshold;
  else if (relation == ">") pass = measured > threshold;
  else if (relation == "==") pass = measured == threshold;
  else if (relation == "finite") pass = std::isfinite(measured);
  else throw std::invalid_argument("unknown relation " + relation);
  return Check{std::move(name), criterion, measured, threshold, std::move(relation), pass};
}

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"tfa-core", "weights",  "modspace", "quantize", "weylalg",
                                              "toeplitz", "symgroup", "confine",  "combinat"};
  return names;
}

const std::vector<int>& suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> m{
      {"tfa-core", {1}},       {"weights", {12}},       {"modspace", {}},    {"quantize", {2, 3}}, {"weylalg", {4}},
      {"toeplitz", {5, 6, 9}}, {"symgroup", {7, 8}},    {"confine", {10}},   {"combinat", {11}}};
  return m.at(suite);
}

const std::string& criterion_suite(int k) {
  for (const auto& s : suite_names()) {
    const auto& c = suite_criteria(s);
    if (std::find(c.begin(), c.end(), k) != c.end()) return s;
  }
  throw std::out_of_range("criterion " + std::to_string(k) + " does not exist");
}

SuiteResult run_suite(const SuiteRequest& request, const ExperimentConfig& config, const RunOptions& options) {
  SuiteResult out;
  out.suite = request.suite;
  Context ctx{config, options, out};
  if (request.suite == "modspace") modspace_suite(ctx, request);
  for (int k : suite_criteria(request.suite)) kCriteria[k - 1](ctx);
  return out;
}

std::vector<Check> run_criterion(int k, const ExperimentConfig& config) {
  if (k < 1 || k > 12) throw std::out_of_range("criterion " + std::to_string(k) + " does not exist");
  SuiteResult out;
  const RunOptions options;
  Context ctx{config, options, out};
  kCriteria[k - 1](ctx);
  return out.checks;
}

}  // namespace phasecalc

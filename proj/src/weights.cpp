#include "phasecalc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "phasecalc/tfa.hpp"

namespace phasecalc {

std::string to_string(WeightClass c) {
  switch (c) {
    case WeightClass::P: return "P";
    case WeightClass::P0_Es: return "P0_Es";
    case WeightClass::P_Es: return "P_Es";
    case WeightClass::P_E: return "P_E";
  }
  return "?";
}

Weight::Weight(std::string name, LogEvaluator log_eval, WeightClass tag, WeightParams params)
    : name_(std::move(name)), log_eval_(std::move(log_eval)), tag_(tag), params_(params) {}

RealMatrix Weight::sample(const PhaseGrid& grid) const {
  if (grid.dim() != 1) throw std::invalid_argument("Weight::sample needs a d = 1 phase grid");
  const Grid1D& g = grid.axis();
  RealMatrix out(g.size(), g.size());
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) out(i, j) = (*this)(g.node(i), g.node(j));
  return out;
}

Weight bracket_power(double t) {
  std::ostringstream name;
  name << "bracket^" << t;
  WeightParams p;
  p.t = t;
  p.r = std::abs(t);
  return Weight(
      name.str(), [t](const Eigen::VectorXd& X) { return 0.5 * t * std::log1p(X.squaredNorm()); }, WeightClass::P, p);
}

Weight subexp(double r, double s, bool every_rate) {
  if (r < 0.0) throw std::invalid_argument("subexp: rate r must be nonnegative");
  if (!(s > 0.0)) throw std::invalid_argument("subexp: order s must be positive");
  std::ostringstream name;
  name << "subexp(r=" << r << ",s=" << s << ")";
  WeightParams p;
  p.r = r;
  p.s = s;
  Weight w(
      name.str(), [r, s](const Eigen::VectorXd& X) { return r * std::pow(X.norm(), 1.0 / s); },
      every_rate ? WeightClass::P0_Es : WeightClass::P_Es, p);
  if (s < 1.0) w.add_warning("subexp order s < 1 lies outside the Gevrey range s >= 1");
  return w;
}

Weight product(const Weight& w1, const Weight& w2) {
  const WeightClass tag = (w1.tag() == WeightClass::P && w2.tag() == WeightClass::P) ? WeightClass::P : WeightClass::P_E;
  return Weight(
      w1.name() + "*" + w2.name(), [w1, w2](const Eigen::VectorXd& X) { return w1.log_value(X) + w2.log_value(X); },
      tag, {});
}

Weight reciprocal(const Weight& w) {
  WeightParams p = w.params();
  if (p.t) p.t = -*p.t;
  return Weight(
      "1/" + w.name(), [w](const Eigen::VectorXd& X) { return -w.log_value(X); }, w.tag(), p);
}

Weight power(const Weight& w, double e) {
  std::ostringstream name;
  name << "(" << w.name() << ")^" << e;
  WeightParams p = w.params();
  if (p.t) p.t = *p.t * e;
  if (p.r) p.r = *p.r * std::abs(e);
  return Weight(
      name.str(), [w, e](const Eigen::VectorXd& X) { return e * w.log_value(X); }, w.tag(), p);
}

Weight constant_weight(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("constant weight must be positive");
  std::ostringstream name;
  name << "const(" << c << ")";
  const double lc = std::log(c);
  return Weight(
      name.str(), [lc](const Eigen::VectorXd&) { return lc; }, WeightClass::P, {});
}

Weight windowed(const Weight& w, const PhaseGrid& grid) {
  const double L = grid.axis().half_width();
  return Weight(
      "windowed(" + w.name() + ")",
      [w, L](const Eigen::VectorXd& X) {
        double chi = 1.0;
        for (Index k = 0; k < X.size(); ++k) chi *= central_cutoff(X(k), L);
        return chi == 0.0 ? 0.0 : chi * w.log_value(X);
      },
      w.tag(), w.params());
}

// ---------------------------------------------------------------------------

SampleSet standard_sample_set(const PhaseGrid& grid, std::uint64_t seed, int random_pairs) {
  const Grid1D& g = grid.axis();
  const int dim = 2 * grid.dim();
  std::vector<int> central;
  for (int k = 0; k < g.size(); ++k)
    if (g.is_central(k)) central.push_back(k);
  // Thin the per-axis node list until the central point count is manageable.
  int stride = 1;
  auto count = [&](int st) {
    double c = 1.0;
    for (int i = 0; i < dim; ++i) c *= static_cast<double>((central.size() + st - 1) / st);
    return c;
  };
  while (count(stride) > 1200.0) ++stride;
  std::vector<int> axis_nodes;
  for (std::size_t i = 0; i < central.size(); i += stride) axis_nodes.push_back(central[i]);

  std::vector<Eigen::VectorXd> points;
  std::vector<int> digits(dim, 0);
  for (;;) {
    Eigen::VectorXd X(dim);
    for (int c = 0; c < dim; ++c) X(c) = g.node(axis_nodes[digits[c]]);
    points.push_back(X);
    int c = dim - 1;
    while (c >= 0 && ++digits[c] == static_cast<int>(axis_nodes.size())) digits[c--] = 0;
    if (c < 0) break;
  }

  SampleSet set;
  set.seed = seed;
  auto add = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    set.pairs.emplace_back(x, y);
    set.pairs.emplace_back(x + y, -y);
    set.max_pair_norm = std::max({set.max_pair_norm, x.norm(), y.norm(), (x + y).norm()});
  };
  for (const auto& x : points)
    for (const auto& y : points) add(x, y);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-g.half_width(), g.half_width());
  for (int k = 0; k < random_pairs; ++k) {
    Eigen::VectorXd x(dim), y(dim);
    for (int c = 0; c < dim; ++c) x(c) = u(rng);
    for (int c = 0; c < dim; ++c) y(c) = u(rng);
    add(x, y);
  }
  return set;
}

SampleSet radial_scan_sample_set(int phase_dim, double r_max, std::uint64_t seed, int radii, int random_directions) {
  if (phase_dim < 2 || phase_dim % 2 != 0) throw std::invalid_argument("phase dimension must be even and positive");
  std::vector<Eigen::VectorXd> dirs;
  for (int c = 0; c < phase_dim; ++c) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(phase_dim);
    e(c) = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  const Eigen::VectorXd diag = Eigen::VectorXd::Ones(phase_dim).normalized();
  dirs.push_back(diag);
  dirs.push_back(-diag);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  for (int k = 0; k < random_directions; ++k) {
    Eigen::VectorXd v(phase_dim);
    for (int c = 0; c < phase_dim; ++c) v(c) = n01(rng);
    dirs.push_back(v.normalized());
  }
  std::vector<double> rho{0.0};
  const double r_min = 0.1;
  for (int k = 0; k < radii; ++k) rho.push_back(r_min * std::pow(r_max / r_min, static_cast<double>(k) / (radii - 1)));

  SampleSet set;
  set.seed = seed;
  for (double a : rho)
    for (double b : rho)
      for (const auto& u : dirs)
        for (const auto& v : dirs) {
          if (a == 0.0 && &u != &dirs.front()) continue;
          if (b == 0.0 && &v != &dirs.front()) continue;
          set.pairs.emplace_back(a * u, b * v);
        }
  set.max_pair_norm = r_max;
  return set;
}

ModerationCertificate certify_moderate(const Weight& w, const Weight& v, const SampleSet& samples,
                                       ModerationOptions options) {
  if (samples.pairs.empty()) throw std::invalid_argument("certify_moderate: empty sample set");
  const double lslack = std::log1p(options.slack);
  for (const auto& [x, y] : samples.pairs) {
    for (const Eigen::VectorXd* p : {&x, &y}) {
      const double lv = v.log_value(*p);
      if (lv < -lslack) {
        std::ostringstream msg;
        msg << "certify_moderate: v < 1 at X = (" << p->transpose() << ")";
        throw std::domain_error(msg.str());
      }
      if (std::abs(lv - v.log_value(-*p)) > lslack * std::max(1.0, std::abs(lv))) {
        std::ostringstream msg;
        msg << "certify_moderate: v is not even at X = (" << p->transpose() << ")";
        throw std::domain_error(msg.str());
      }
    }
    if (options.check_submultiplicative && v.log_value(x + y) > v.log_value(x) + v.log_value(y) + lslack) {
      std::ostringstream msg;
      msg << "certify_moderate: v is not submultiplicative at x = (" << x.transpose() << "), y = (" << y.transpose()
          << ")";
      throw std::domain_error(msg.str());
    }
  }
  double log_up = -INFINITY, log_low = -INFINITY;
  for (const auto& [x, y] : samples.pairs) {
    const double lwx = w.log_value(x), lwxy = w.log_value(x + y), lvy = v.log_value(y);
    log_up = std::max(log_up, lwxy - lwx - lvy);
    log_low = std::max(log_low, lwx - lwxy - lvy);
  }
  ModerationCertificate cert;
  cert.C_hat = std::exp(log_up);
  cert.C_lower = std::exp(log_low);
  cert.lower_chain_holds = log_low <= log_up + lslack;
  cert.sample_count = samples.pairs.size();
  cert.max_pair_norm = samples.max_pair_norm;
  cert.seed = samples.seed;
  return cert;
}

std::vector<GevreyRateResult> certify_gevrey_moderate(const Weight& w, double s, const std::vector<double>& rates,
                                                      const SampleSet& samples) {
  if (!(s > 0.0)) throw std::invalid_argument("certify_gevrey_moderate: order s must be positive");
  double r_max = 0.0;
  for (const auto& [x, y] : samples.pairs) r_max = std::max({r_max, x.norm(), y.norm()});
  std::vector<GevreyRateResult> out;
  for (double r : rates) {
    GevreyRateResult res;
    res.r = r;
    res.log_C = res.log_C_half = -INFINITY;
    for (const auto& [x, y] : samples.pairs) {
      const double l = w.log_value(x + y) - w.log_value(x) - r * std::pow(y.norm(), 1.0 / s);
      res.log_C = std::max(res.log_C, l);
      if (x.norm() <= 0.5 * r_max * (1 + 1e-12) && y.norm() <= 0.5 * r_max * (1 + 1e-12))
        res.log_C_half = std::max(res.log_C_half, l);
    }
    res.pass = std::isfinite(res.log_C) && res.log_C <= res.log_C_half + std::log1p(1e-9);
    out.push_back(res);
  }
  return out;
}

bool gevrey_claim_holds(const std::vector<GevreyRateResult>& results, WeightClass claim) {
  const auto passed = [](const GevreyRateResult& r) { return r.pass; };
  if (claim == WeightClass::P0_Es) return std::all_of(results.begin(), results.end(), passed);
  return std::any_of(results.begin(), results.end(), passed);
}

// ---------------------------------------------------------------------------

MollifiedWeight mollify(const Weight& w, const SampledSymbol& bump, double alias_budget) {
  const Grid1D& g = bump.axis();
  const int n = g.size();
  const double h = g.spacing();
  const double peak = bump.values().cwiseAbs().maxCoeff();
  if (peak == 0.0) throw std::invalid_argument("mollify: bump is identically zero");
  for (Index i = 0; i < bump.values().size(); ++i) {
    const Complex b = bump.values().data()[i];
    if (b.real() < -1e-14 || std::abs(b.imag()) > 1e-14 * peak)
      throw std::invalid_argument("mollify: bump has negative or complex values");
  }
  require_alias_budget(bump, alias_budget, "mollify bump");
  const Matrix b = bump.values() / quadrature(bump);

  // Weight on the doubled grid (k - N) h, k < 2N; bump zero-padded into its
  // centre. The centred cyclic convolution of these never wraps for
  // outputs on the original grid.
  Matrix wide_w(2 * n, 2 * n), wide_b = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) wide_w(i, j) = w((i - n) * h, (j - n) * h);
  wide_b.block(n / 2, n / 2, n, n) = b;
  const Matrix conv = periodic_convolve(wide_w, wide_b, h).block(n / 2, n / 2, n, n);
  const RealMatrix samples = conv.real();

  const RealMatrix base = w.sample(bump.grid());
  const RealMatrix ratio = samples.cwiseQuotient(base);
  const Grid1D grid = g;
  const Matrix bcopy = b;
  const Weight wcopy = w;
  Weight result(
      "mollified(" + w.name() + ")",
      [grid, bcopy, wcopy, samples](const Eigen::VectorXd& X) {
        const auto i = grid.index_of(X(0)), j = grid.index_of(X(1));
        if (i && j) return std::log(samples(*i, *j));
        double acc = 0.0;
        for (int p = 0; p < grid.size(); ++p)
          for (int q = 0; q < grid.size(); ++q)
            acc += wcopy(X(0) - grid.node(p), X(1) - grid.node(q)) * bcopy(p, q).real();
        return std::log(acc * grid.spacing() * grid.spacing());
      },
      w.tag(), w.params());
  return {result, samples, ratio.minCoeff(), ratio.maxCoeff()};
}

Weight log_weight(const Weight& w) {
  return Weight(
      "log(" + w.name() + ")", [w](const Eigen::VectorXd& X) { return std::log1p(std::abs(w.log_value(X))); },
      WeightClass::P, {});
}

double log_weight_constant(double C) { return std::max(1.0, 1.0 + std::log(C)); }

}  // namespace phasecalc

#include "phasecalc/modspace.hpp"

#include <algorithm>
#include <sstream>

#include "phasecalc/tfa.hpp"

namespace phasecalc {
namespace {

// (h sum |v|^p)^{1/p} with the max factored out; p = inf gives max |v|.
double lp(const Eigen::VectorXd& v, double p, double h) {
  const double m = v.cwiseAbs().maxCoeff();
  if (std::isinf(p) || m == 0.0) return m;
  return m * std::pow(h * (v.cwiseAbs() / m).array().pow(p).sum(), 1.0 / p);
}

}  // namespace

std::string to_string(const MixedNormSpec& spec) {
  std::ostringstream s;
  auto e = [](double v) { return std::isinf(v) ? std::string("inf") : std::to_string(v).substr(0, 6); };
  s << "p=" << e(spec.p) << ",q=" << e(spec.q) << (spec.order == NormOrder::x_then_xi ? ",x_then_xi" : ",xi_then_x");
  return s.str();
}

double mixed_norm(const Matrix& F, const RealMatrix& w, double h, const MixedNormSpec& spec) {
  if (!(spec.p > 0.0) || !(spec.q > 0.0)) throw std::invalid_argument("mixed_norm: p and q must be positive");
  if (F.rows() != w.rows() || F.cols() != w.cols()) throw std::invalid_argument("mixed_norm: shape mismatch");
  RealMatrix A = F.cwiseAbs().cwiseProduct(w);
  if (spec.order == NormOrder::xi_then_x) A.transposeInPlace();
  // Rows of A index the inner variable.
  Eigen::VectorXd inner(A.cols());
  for (Index c = 0; c < A.cols(); ++c) inner(c) = lp(A.col(c), spec.p, h);
  return lp(inner, spec.q, h);
}

double modulation_norm(const SampledFunction& f, const SampledFunction& phi, const RealMatrix& w,
                       const MixedNormSpec& spec, std::optional<double> alias_budget) {
  if (spec.p < kMinExponent || spec.q < kMinExponent)
    throw std::invalid_argument("modulation_norm: exponents below 0.1 are not supported");
  const double n = phi.l2_norm();
  if (n == 0.0) throw std::invalid_argument("modulation_norm: window is identically zero");
  const SampledFunction unit(phi.grid(), Vector(phi.values() / n));
  const SampledSymbol V = stft(f, unit, alias_budget);
  return mixed_norm(V.values(), w, f.grid().spacing(), spec);
}

ModNormResult modulation_norm(const SampledFunction& f, const SampledFunction& phi, const Weight& w,
                              const MixedNormSpec& spec, std::optional<double> alias_budget,
                              const std::string& window_id) {
  const RealMatrix ws = w.sample(PhaseGrid(f.grid(), 1));
  return {modulation_norm(f, phi, ws, spec, alias_budget), window_id, w.name(), spec};
}

void summarize(RatioStats& stats) {
  if (stats.ratios.empty()) return;
  std::vector<double> sorted = stats.ratios;
  std::sort(sorted.begin(), sorted.end());
  stats.min = sorted.front();
  stats.max = sorted.back();
  const std::size_t n = sorted.size();
  stats.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

RatioStats window_equivalence_report(const std::vector<EnsembleMember>& ensemble, const SampledFunction& phi1,
                                     const SampledFunction& phi2, const Weight& w, const MixedNormSpec& spec, double K,
                                     std::optional<double> alias_budget) {
  if (ensemble.empty()) throw std::invalid_argument("window_equivalence_report: empty ensemble");
  const RealMatrix ws = w.sample(PhaseGrid(phi1.grid(), 1));
  RatioStats stats;
  stats.K = K;
  for (const auto& m : ensemble) {
    if (m.f.values().cwiseAbs().maxCoeff() == 0.0) {
      stats.skipped.push_back(m.id);
      continue;
    }
    const double n1 = modulation_norm(m.f, phi1, ws, spec, alias_budget);
    const double n2 = modulation_norm(m.f, phi2, ws, spec, alias_budget);
    stats.ids.push_back(m.id);
    stats.ratios.push_back(n1 / n2);
  }
  summarize(stats);
  return stats;
}

SampledFunction tf_shift(const SampledFunction& f, int m, int k) {
  const Grid1D& g = f.grid();
  Vector out(g.size());
  for (int i = 0; i < g.size(); ++i)
    out(i) = f.values()(g.wrap(i - m)) * std::polar(1.0, k * g.spacing() * g.node(i));
  return SampledFunction(g, out);
}

}  // namespace phasecalc

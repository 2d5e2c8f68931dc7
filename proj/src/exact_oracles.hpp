// Brute-force references for the combinat suite. They share no code with
// combinat.cpp beyond the number types.
#ifndef PHASECALC_SRC_EXACT_ORACLES_HPP
#define PHASECALC_SRC_EXACT_ORACLES_HPP

#include <map>
#include <vector>

#include "phasecalc/combinat.hpp"

namespace phasecalc::exact_oracle {

using combinat::MultiIndex;
using combinat::Rational;

/// Every k-tuple of multi-indices from the box below alpha that sums to alpha.
inline std::vector<std::vector<MultiIndex>> brute_tuples(const MultiIndex& alpha, int k) {
  std::vector<MultiIndex> cells{MultiIndex(std::vector<int>(alpha.dim(), 0))};
  for (std::size_t i = 0; i < alpha.dim(); ++i) {
    std::vector<MultiIndex> next;
    for (const auto& m : cells)
      for (int v = 0; v <= alpha.c[i]; ++v) {
        MultiIndex t = m;
        t.c[i] = v;
        next.push_back(t);
      }
    cells = next;
  }
  std::vector<std::vector<MultiIndex>> out;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::vector<int> sum(alpha.dim(), 0);
    for (int j = 0; j < k; ++j)
      for (std::size_t i = 0; i < alpha.dim(); ++i) sum[i] += cells[idx[j]].c[i];
    if (sum == alpha.c) {
      std::vector<MultiIndex> t;
      for (int j = 0; j < k; ++j) t.push_back(cells[idx[j]]);
      out.push_back(t);
    }
    int j = k - 1;
    while (j >= 0 && ++idx[j] == cells.size()) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

/// Bivariate polynomial keyed by exponent pair.
using Poly = std::map<std::pair<int, int>, Rational>;

inline Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  return out;
}

inline Poly derive(const Poly& p, int ax, int ay) {
  Poly out;
  for (const auto& [e, c] : p) {
    if (e.first < ax || e.second < ay) continue;
    Rational f = c;
    for (int i = 0; i < ax; ++i) f *= e.first - i;
    for (int i = 0; i < ay; ++i) f *= e.second - i;
    out[{e.first - ax, e.second - ay}] += f;
  }
  return out;
}

inline Rational eval(const Poly& p, const Rational& x, const Rational& y) {
  Rational s = 0;
  for (const auto& [e, c] : p) {
    Rational t = c;
    for (int i = 0; i < e.first; ++i) t *= x;
    for (int i = 0; i < e.second; ++i) t *= y;
    s += t;
  }
  return s;
}

/// f(g) for a univariate polynomial f given by coefficients.
inline Poly compose(const std::vector<Rational>& f, const Poly& g) {
  Poly out, power{{{0, 0}, Rational(1)}};
  for (const auto& c : f) {
    for (const auto& [e, v] : power) out[e] += c * v;
    power = mul(power, g);
  }
  return out;
}

/// k-th derivative of the univariate polynomial f at t.
inline Rational eval_derivative(const std::vector<Rational>& f, int k, const Rational& t) {
  Rational s = 0;
  for (std::size_t n = k; n < f.size(); ++n) {
    Rational c = f[n];
    for (int i = 0; i < k; ++i) c *= static_cast<int>(n) - i;
    for (std::size_t i = 0; i < n - k; ++i) c *= t;
    s += c;
  }
  return s;
}

}  // namespace phasecalc::exact_oracle

#endif  // PHASECALC_SRC_EXACT_ORACLES_HPP

#include "phasecalc/combinat.hpp"

#include <stdexcept>

namespace phasecalc::combinat {

MultiIndex::MultiIndex(std::vector<int> components) : c(std::move(components)) {
  for (int v : c)
    if (v < 0) throw std::invalid_argument("MultiIndex: components must be nonnegative");
}

int MultiIndex::order() const {
  int s = 0;
  for (int v : c) s += v;
  return s;
}

BigInt MultiIndex::factorial() const {
  BigInt f = 1;
  for (int v : c) f *= combinat::factorial(v);
  return f;
}

bool MultiIndex::within(const MultiIndex& o) const {
  if (o.c.size() != c.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] > o.c[i]) return false;
  return true;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + std::to_string(c[i]);
  return s + ")";
}

BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binomial(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("binomial: negative argument");
  if (k > n) return 0;
  BigInt b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

BinomialSum binomial_sum(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("binomial_sum: n and k must be nonnegative");
  BinomialSum r;
  for (int j = 0; j <= k; ++j) r.sum += binomial(n + j, j);
  r.closed_form = binomial(n + k + 1, k);
  return r;
}

namespace {

// Fills blocks[pos..k) with multi-indices summing to `rest`.
void compose(const MultiIndex& rest, int pos, int k, bool nonzero, std::vector<MultiIndex>& blocks,
             const std::function<void(const std::vector<MultiIndex>&)>& visit) {
  const std::size_t d = rest.dim();
  if (pos == k - 1) {
    if (nonzero && rest.is_zero()) return;
    blocks[pos] = rest;
    visit(blocks);
    return;
  }
  // Enumerate beta <= rest with an odometer over the coordinates.
  MultiIndex beta(std::vector<int>(d, 0));
  while (true) {
    if (!(nonzero && beta.is_zero())) {
      MultiIndex remaining = rest;
      for (std::size_t i = 0; i < d; ++i) remaining.c[i] -= beta.c[i];
      if (!(nonzero && remaining.order() < k - pos - 1)) {
        blocks[pos] = beta;
        compose(remaining, pos + 1, k, nonzero, blocks, visit);
      }
    }
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (beta.c[i] < rest.c[i]) {
        ++beta.c[i];
        for (std::size_t j = i + 1; j < d; ++j) beta.c[j] = 0;
        break;
      }
      if (i == 0) return;
    }
    if (d == 0) return;
  }
}

}  // namespace

void for_each_composition(const MultiIndex& alpha, int k, bool nonzero_blocks,
                          const std::function<void(const std::vector<MultiIndex>&)>& visit) {
  if (k < 1) throw std::invalid_argument("for_each_composition: k must be at least 1");
  std::vector<MultiIndex> blocks(k);
  compose(alpha, 0, k, nonzero_blocks, blocks, visit);
}

BigInt composition_count(const MultiIndex& alpha, int k) {
  if (k < 1) throw std::invalid_argument("composition_count: k must be at least 1");
  BigInt n = 1;
  for (int a : alpha.c) n *= binomial(a + k - 1, k - 1);
  return n;
}

SRecursion s_recursion(int gamma, int j) {
  if (gamma < 0 || j < 1) throw std::invalid_argument("s_recursion: requires gamma >= 0 and j >= 1");
  std::vector<BigInt> S(gamma + 1);
  for (int g = 0; g <= gamma; ++g) S[g] = g + 1;
  for (int level = 1; level < j; ++level) {
    BigInt acc = 0;
    for (int g = 0; g <= gamma; ++g) {
      acc += S[g];
      S[g] = acc;
    }
  }
  return {S[gamma], binomial(gamma + j, j)};
}

Rational faa_di_bruno(const std::vector<Rational>& outer, const std::map<MultiIndex, Rational>& inner,
                      const MultiIndex& alpha) {
  const int n = alpha.order();
  if (static_cast<int>(outer.size()) < n + 1)
    throw std::invalid_argument("faa_di_bruno: missing outer derivative of order " + std::to_string(outer.size()));
  if (n == 0) return outer[0];
  auto inner_at = [&](const MultiIndex& beta) -> const Rational& {
    const auto it = inner.find(beta);
    if (it == inner.end())
      throw std::invalid_argument("faa_di_bruno: missing inner derivative of order " + beta.to_string());
    return it->second;
  };
  Rational total = 0;
  for (int k = 1; k <= n; ++k) {
    Rational inner_sum = 0;
    for_each_composition(alpha, k, true, [&](const std::vector<MultiIndex>& blocks) {
      Rational term = 1;
      for (const auto& b : blocks) term *= inner_at(b) / Rational(b.factorial());
      inner_sum += term;
    });
    total += outer[k] / Rational(factorial(k)) * inner_sum;
  }
  return total * Rational(alpha.factorial());
}

namespace {

// Flat index of beta <= alpha in the box prod (alpha_i + 1).
struct Box {
  std::vector<int> extent;
  std::size_t size = 1;
  explicit Box(const MultiIndex& a) {
    for (int v : a.c) {
      extent.push_back(v + 1);
      size *= static_cast<std::size_t>(v + 1);
    }
  }
  MultiIndex at(std::size_t flat) const {
    std::vector<int> c(extent.size());
    for (std::size_t i = extent.size(); i-- > 0;) {
      c[i] = static_cast<int>(flat % extent[i]);
      flat /= extent[i];
    }
    return MultiIndex(std::move(c));
  }
  std::size_t flat(const MultiIndex& m) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < extent.size(); ++i) f = f * extent[i] + static_cast<std::size_t>(m.c[i]);
    return f;
  }
};

// P_k(gamma) = sum over k-tuples summing to gamma of prod w(beta_j), for all
// gamma <= alpha, by repeated lattice convolution.
template <typename T>
std::vector<T> tuple_sums(const Box& box, const std::vector<T>& w, const std::vector<T>& prev) {
  std::vector<T> next(box.size, T(0));
  for (std::size_t g = 0; g < box.size; ++g) {
    const MultiIndex gamma = box.at(g);
    for (std::size_t b = 0; b < box.size; ++b) {
      const MultiIndex beta = box.at(b);
      if (!beta.within(gamma)) continue;
      MultiIndex rest = gamma;
      for (std::size_t i = 0; i < rest.dim(); ++i) rest.c[i] -= beta.c[i];
      next[g] += w[b] * prev[box.flat(rest)];
    }
  }
  return next;
}

}  // namespace

FactorialSumBound factorial_sum_bound(const MultiIndex& alpha, double s0) {
  if (!(s0 > 0.0 && s0 <= 1.0)) throw std::invalid_argument("factorial_sum_bound: s0 must lie in (0, 1]");
  const int n = alpha.order();
  if (n > kMaxFactorialSumOrder)
    throw std::invalid_argument("factorial_sum_bound: |alpha| = " + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxFactorialSumOrder));
  FactorialSumBound r;
  r.alpha = alpha;
  r.s0 = s0;
  r.C0 = alpha.dim() == 1 ? 16 : 4 * (1 + n);
  r.bound = boost::multiprecision::pow(BigInt(r.C0), static_cast<unsigned>(n));
  const Box box(alpha);
  const std::size_t top = box.flat(alpha);

  if (s0 == 1.0) {
    r.exact = true;
    const std::vector<Rational> w(box.size, Rational(1));
    std::vector<Rational> P = w;
    Rational total = 0;
    for (int k = 1; k <= n; ++k) {
      if (k > 1) P = tuple_sums(box, w, P);
      total += P[top] / k;
    }
    r.value_exact = total;
    r.value = BigFloat(total);
    r.pass = total <= Rational(r.bound);
    return r;
  }

  std::vector<BigFloat> w(box.size);
  const BigFloat exponent = BigFloat(s0) - 1;
  for (std::size_t b = 0; b < box.size; ++b) w[b] = boost::multiprecision::pow(BigFloat(box.at(b).factorial()), exponent);
  std::vector<BigFloat> P = w;
  BigFloat total = 0;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) P = tuple_sums(box, w, P);
    total += P[top] / k;
  }
  // Every operation is within a few ulps at 50 digits; a relative margin of
  // 1e-40 dominates the accumulated rounding, so `value` is an upper bound.
  r.value = total * (1 + BigFloat("1e-40"));
  r.pass = r.value <= BigFloat(r.bound);
  return r;
}

}  // namespace phasecalc::combinat

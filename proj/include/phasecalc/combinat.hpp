#ifndef PHASECALC_COMBINAT_HPP
#define PHASECALC_COMBINAT_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace phasecalc::combinat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

struct MultiIndex {
  std::vector<int> c;

  MultiIndex() = default;
  MultiIndex(std::vector<int> components);
  MultiIndex(std::initializer_list<int> components) : MultiIndex(std::vector<int>(components)) {}

  std::size_t dim() const { return c.size(); }
  int order() const;
  BigInt factorial() const;
  bool is_zero() const { return order() == 0; }
  /// Componentwise this <= o.
  bool within(const MultiIndex& o) const;
  /// Lexicographic order for use as a map key.
  auto operator<=>(const MultiIndex& o) const = default;
  std::string to_string() const;
};

BigInt factorial(int n);
BigInt binomial(int n, int k);

struct BinomialSum {
  BigInt sum;          // sum_{j=0}^k C(n + j, j)
  BigInt closed_form;  // C(n + k + 1, k)
  bool equal() const { return sum == closed_form; }
};
BinomialSum binomial_sum(int n, int k);

/// Calls visit(blocks) for every k-tuple of multi-indices summing to alpha,
/// in lexicographic order. With nonzero_blocks, zero blocks are excluded.
void for_each_composition(const MultiIndex& alpha, int k, bool nonzero_blocks,
                          const std::function<void(const std::vector<MultiIndex>&)>& visit);

/// Number of k-tuples (beta_1, ..., beta_k) with sum alpha:
/// prod_j C(alpha_j + k - 1, k - 1).
BigInt composition_count(const MultiIndex& alpha, int k);

struct SRecursion {
  BigInt value;        // S_j(gamma) from S_1(g) = g + 1, S_{j+1}(g) = sum_{b <= g} S_j(b)
  BigInt closed_form;  // C(gamma + j, j)
  bool equal() const { return value == closed_form; }
};
SRecursion s_recursion(int gamma, int j);

/// d^alpha f(g(x)) from f^{(k)}(g(x)) (outer[k], k = 0..|alpha|) and the
/// inner derivatives d^beta g(x), via
///   d^alpha f(g) / alpha! = sum_k f^{(k)} / k! sum_{beta_1 + ... + beta_k = alpha, beta_j != 0} prod d^{beta_j} g / beta_j!.
Rational faa_di_bruno(const std::vector<Rational>& outer, const std::map<MultiIndex, Rational>& inner,
                      const MultiIndex& alpha);

/// Largest |alpha| accepted by factorial_sum_bound.
inline constexpr int kMaxFactorialSumOrder = 12;

struct FactorialSumBound {
  MultiIndex alpha;
  double s0 = 1.0;
  bool exact = false;     // s0 == 1: value_exact holds the rational value
  Rational value_exact;
  BigFloat value;         // value, rounded up to a certified upper bound when s0 < 1
  BigInt bound;           // 16^{|alpha|} for d = 1, C0^{|alpha|} otherwise
  int C0 = 16;
  bool pass = false;
};

/// sum_{k=1}^{|alpha|} (1/k) sum_{beta in Omega_{k,alpha}} prod (beta_j!)^{s0 - 1},
/// where Omega_{k,alpha} holds all k-tuples summing to alpha (zero blocks
/// included). For d > 1, C0 = 4 (1 + |alpha|).
FactorialSumBound factorial_sum_bound(const MultiIndex& alpha, double s0);

}  // namespace phasecalc::combinat

#endif  // PHASECALC_COMBINAT_HPP

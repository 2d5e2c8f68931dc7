#include "phasecalc/ensembles.hpp"

#include <random>

namespace phasecalc {

double hermite_function(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_function: negative order");
  double prev = 0.0, cur = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex coherent_state(double x, double x0, double k0, double width) {
  const double u = (x - x0) / width;
  return std::pow(kPi, -0.25) / std::sqrt(width) * std::exp(-0.5 * u * u) * std::polar(1.0, k0 * x);
}

SampledFunction gaussian_window(const Grid1D& g, double width) {
  return SampledFunction(g, [width](double x) { return coherent_state(x, 0.0, 0.0, width); });
}

std::vector<EnsembleMember> hermite_ensemble(const Grid1D& g, int count) {
  std::vector<EnsembleMember> out;
  for (int n = 0; n < count; ++n)
    out.push_back({"hermite" + std::to_string(n),
                   SampledFunction(g, [n](double x) { return Complex(hermite_function(n, x)); })});
  return out;
}

std::vector<EnsembleMember> coherent_ensemble(const Grid1D& g, int count, std::uint64_t seed, double max_shift) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-max_shift, max_shift);
  std::vector<EnsembleMember> out;
  for (int k = 0; k < count; ++k) {
    const double x0 = u(rng), k0 = u(rng);
    out.push_back({"coherent" + std::to_string(k),
                   SampledFunction(g, [x0, k0](double x) { return coherent_state(x, x0, k0); })});
  }
  return out;
}

}  // namespace phasecalc

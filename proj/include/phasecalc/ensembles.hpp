#ifndef PHASECALC_ENSEMBLES_HPP
#define PHASECALC_ENSEMBLES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "phasecalc/grid.hpp"

namespace phasecalc {

/// L2-normalized Hermite function of order n (three-term recurrence).
double hermite_function(int n, double x);

/// pi^{-1/4} w^{-1/2} exp(-(x - x0)^2 / (2 w^2) + i k0 x).
Complex coherent_state(double x, double x0, double k0, double width = 1.0);

/// L2-normalized Gaussian window pi^{-1/4} w^{-1/2} e^{-x^2 / (2 w^2)}, with
/// an exact evaluator attached.
SampledFunction gaussian_window(const Grid1D& g, double width = 1.0);

struct EnsembleMember {
  std::string id;
  SampledFunction f;
};

/// Hermite functions 0..count-1.
std::vector<EnsembleMember> hermite_ensemble(const Grid1D& g, int count);

/// Coherent states with centres and frequencies uniform in
/// [-max_shift, max_shift], from a seeded generator.
std::vector<EnsembleMember> coherent_ensemble(const Grid1D& g, int count, std::uint64_t seed, double max_shift = 1.0);

}  // namespace phasecalc

#endif  // PHASECALC_ENSEMBLES_HPP

#ifndef PHASECALC_CONFINE_HPP
#define PHASECALC_CONFINE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "phasecalc/weights.hpp"

namespace phasecalc {

/// D^alpha a by spectral differentiation on the phase grid. The Nyquist
/// mode is dropped along every differentiated axis.
Matrix spectral_derivative(const Matrix& a, const Grid1D& g, int ax, int axi);

struct DerivativeRow {
  int ax = 0, axi = 0;
  double max_ratio = 0.0;  // max_central |D^alpha a| / (w alpha!^s)
  double h_alpha = 0.0;    // (max_ratio / C)^{1/|alpha|}
  double residual = 0.0;   // max_ratio / (C h^{|alpha|}), at most 1 once h is fitted
};

struct ClassDiagnostic {
  std::string weight;
  double s = 1.0;
  int alpha_max = 4;
  double C = 0.0;  // max_central |a| / w
  double h = 0.0;  // least h with |D^alpha a| <= C h^{|alpha|} alpha!^s w on central nodes
  std::vector<DerivativeRow> rows;
};

/// Fits the envelope C h^{|alpha|} alpha!^s w to the spectral derivatives of
/// a on central nodes, |alpha| <= alpha_max. Throws AliasingError naming
/// alpha when a derivative spectrum leaves more than `alias_budget` of its
/// peak in the outer frequency band.
ClassDiagnostic class_diagnostic(const SampledSymbol& a, const Weight& w, double s, int alpha_max = 4,
                                 std::optional<double> alias_budget = kDefaultAliasBudget);

struct ProductProfile {
  Matrix product;       // (phi_Y a1) # (psi_Z a2)
  double C = 0.0;       // fitted envelope constant
  double r = 0.0;       // fitted decay rate
  double peak = 0.0;    // max |product|
  std::size_t fitted_nodes = 0;
};

/// Weyl product of the localized symbols phi(. - Y) a1 and psi(. - Z) a2,
/// with Y, Z given as grid offsets, and a least-squares fit of
///   log |product| = log C - r (|X - Y|^{1/s} + |X - Z|^{1/s} + |Y - Z|^{1/s}) + log(w1 w2)
/// over central nodes with |product| > 1e-12 peak. Weights default to 1.
ProductProfile confined_product_profile(const SampledSymbol& phi, const SampledSymbol& psi, const SampledSymbol& a1,
                                        const SampledSymbol& a2, std::array<int, 2> Y, std::array<int, 2> Z,
                                        double s, const RealMatrix* w1 = nullptr, const RealMatrix* w2 = nullptr);

struct PartitionOfUnity {
  SampledSymbol phi_sym;
  SampledSymbol psi_sym;
  double defect = 0.0;            // max_central |sum_Y (psi_Y # phi_Y) step^2 - 1|
  double idempotence = 0.0;       // max |phi # phi - phi| / max |phi|
  int step_nodes = 1;
};

/// phi_sym = (2 pi)^{1/2} W_{g,g} for normalized g, psi_sym = phi_sym / int phi_sym,
/// and the lattice sum over the torus with step `lattice_step` (a multiple of h).
PartitionOfUnity partition_of_unity(const SampledFunction& g, double lattice_step);

struct EnvelopeTable {
  std::vector<double> Y_norm;    // |Y| of each frequency node
  std::vector<double> envelope;  // max_X |V_Phi a(X, Y)| / w0(X)
  double C = 0.0;
  double r = 0.0;
  double x_spread = 0.0;  // max_X / min_X of sup_Y |V_Phi a(X, Y)| / w0(X)
  std::size_t fitted_nodes = 0;
};

/// Phase-space STFT of a with Phi(Z) = exp(-|Z|^2 / 2) over central X,
/// reduced to E(Y) = max_X |V_Phi a(X, Y)| / w0(X), then fitted to
/// C exp(-r |Y|^{1/s}) by least squares where E > 1e-12 max E.
EnvelopeTable minfty1_envelope(const SampledSymbol& a, const Weight& w0, double s, int x_stride = 1);

}  // namespace phasecalc

#endif  // PHASECALC_CONFINE_HPP

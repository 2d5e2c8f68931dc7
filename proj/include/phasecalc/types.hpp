#ifndef PHASECALC_TYPES_HPP
#define PHASECALC_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace phasecalc {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Raised when sampled data carries more mass near the grid boundary than
/// the declared aliasing budget allows.
class AliasingError : public std::runtime_error {
 public:
  AliasingError(const std::string& what, double tail_ratio)
      : std::runtime_error(what), tail_ratio_(tail_ratio) {}
  double tail_ratio() const noexcept { return tail_ratio_; }

 private:
  double tail_ratio_;
};

}  // namespace phasecalc

#endif  // PHASECALC_TYPES_HPP

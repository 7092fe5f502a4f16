#pragma once

#include <stdexcept>
#include <string>

namespace sle {

/// Argument validation failure (bad sizes, out-of-range parameters).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numeric failure: overflow, non-convergent quadrature, degenerate geometry.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// kappa together with the constants derived from it.
///
///   a      = 2 / kappa          (Loewner speed)
///   lambda = 4a - 2             (exponent in the left-passage density)
///   beta   = 4a - 1             (per-crossing decay exponent)
///   dim    = 1 + kappa / 8      (dimension of the trace)
///   c_kappa normalizes sin^lambda on [0, pi].
struct KappaParams {
  double kappa = 0.0;
  double a = 0.0;
  double lambda = 0.0;
  double beta = 0.0;
  double dim = 0.0;
  double c_kappa = 0.0;

  /// Throws ArgumentError unless 0 < kappa <= 4.
  static KappaParams from_kappa(double kappa);
};

}  // namespace sle

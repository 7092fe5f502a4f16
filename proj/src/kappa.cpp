#include "sle/kappa.hpp"

#include <cmath>
#include <numbers>

namespace sle {

KappaParams KappaParams::from_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa <= 4.0)) {
    throw ArgumentError("kappa must lie in (0, 4], got " + std::to_string(kappa));
  }
  KappaParams p;
  p.kappa = kappa;
  p.a = 2.0 / kappa;
  p.lambda = 4.0 * p.a - 2.0;
  p.beta = 4.0 * p.a - 1.0;
  p.dim = 1.0 + kappa / 8.0;
  // 1 / int_0^pi sin^lambda = Gamma((lambda+2)/2) / (sqrt(pi) Gamma((lambda+1)/2)).
  // lgamma keeps this finite for the large lambda of small kappa.
  p.c_kappa = std::exp(std::lgamma(0.5 * (p.lambda + 2.0)) - std::lgamma(0.5 * (p.lambda + 1.0))) /
              std::sqrt(std::numbers::pi);
  return p;
}

}  // namespace sle

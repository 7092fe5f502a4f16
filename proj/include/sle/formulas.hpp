#pragma once

#include <optional>
#include <vector>

#include "sle/kappa.hpp"
#include "sle/signature.hpp"

namespace sle {

/// Catalan's constant, sum_{k>=0} (-1)^k / (2k+1)^2.
inline constexpr double kCatalan = 0.91596559417721901505;

/// Tolerances for the tanh-sinh rules behind the formulas below; max_depth caps the number of
/// interval-halving refinements.
struct QuadratureSpec {
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;
  int max_depth = 15;

  /// Throws ArgumentError unless both tolerances are positive and 1 <= max_depth <= 20.
  void validate() const;
};

/// Left-passage law: C_kappa int_0^theta sin^lambda(t) dt, the probability that the chordal
/// curve from 0 to infinity passes to the right of r e^{i theta}. Computed on [0, pi/2] and
/// reflected, so phi(theta) + phi(pi - theta) = 1 holds to rounding.
double phi(double theta, const KappaParams& params, const QuadratureSpec& quad = {});

/// Probability that the curve from 0 to 1 in the disk of radius 1/2 about 1/2 passes below
/// x + iy: phi(arg(iz / (1 - z))). Tends to 0 at the lower boundary arc and to 1 at the upper one.
double below_probability(double x, double y, const KappaParams& params, const QuadratureSpec& quad = {});

/// (C_kappa / 4) int_0^{pi/2} (sin t - t cos t) / sin^3 t * cos^lambda t dt - 1/24.
double a_kappa_quadrature(const KappaParams& params, const QuadratureSpec& quad = {});

/// Closed forms for lambda in {0, ..., 6}; nullopt for any other kappa.
std::optional<double> a_kappa_closed_form(const KappaParams& params);

/// 1/12 - int_D y p(x, y) dx dy in polar coordinates about the disk center.
double a_kappa_double_integral(const KappaParams& params, const QuadratureSpec& quad = {1e-10, 1e-9, 10});

/// H(theta) = cos(theta) int_0^inf r^2 / (r^2 + 1 + 2 r sin theta)^3 dr in closed form, for
/// theta in [0, pi/2).
double radial_integral(double theta);

/// The same integral by direct quadrature on [0, inf).
double radial_integral_quadrature(double theta, const QuadratureSpec& quad = {});

/// H(pi/2 - theta) in closed form.
double reflected_radial_integral(double theta);

/// int_t^{pi/2} H(pi/2 - s) ds = (1 - (sin t - t cos t) / sin^3 t) / 8.
double reflected_radial_tail(double t);

/// Level-3 truncation of the expected signature of the curve from 0 to 1 in the small disk.
struct ExpectedSignature3 {
  double a_kappa = 0.0;
  TensorSeries coeffs{3};
};

ExpectedSignature3 expected_signature_level3(const KappaParams& params, const QuadratureSpec& quad = {});

struct AKappaRow {
  double kappa = 0.0;
  int lambda = 0;
  double closed_form = 0.0;
  double quadrature = 0.0;
  double abs_diff = 0.0;
};

/// The seven integer-lambda rows kappa = 8 / (lambda + 2), lambda = 0..6.
std::vector<AKappaRow> a_kappa_table(const QuadratureSpec& quad = {});

}  // namespace sle

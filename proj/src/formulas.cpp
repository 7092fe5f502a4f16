#include "sle/formulas.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>

namespace sle {

namespace {

constexpr double kPi = std::numbers::pi;

// Double-exponential rule; it tolerates the algebraic endpoint singularities of sin^lambda and
// cos^lambda for small lambda. One integrator per thread and refinement limit, built on first use.
template <class F>
double integrate(F f, double lo, double hi, const QuadratureSpec& quad, const char* what) {
  thread_local std::map<int, boost::math::quadrature::tanh_sinh<double>> integrators;
  auto it = integrators.find(quad.max_depth);
  if (it == integrators.end()) it = integrators.try_emplace(quad.max_depth, static_cast<std::size_t>(quad.max_depth)).first;
  double error = 0.0;
  double l1 = 0.0;
  const double value = it->second.integrate(f, lo, hi, 0.1 * quad.rel_tol, &error, &l1);
  if (!std::isfinite(value) || error > std::max(quad.abs_tol, quad.rel_tol * l1)) {
    char detail[96];
    std::snprintf(detail, sizeof detail, " (estimate %.6g, error %.3g, l1 %.3g)", value, error, l1);
    throw NumericError(std::string(what) + ": quadrature did not converge" + detail);
  }
  return value;
}

// (sin t - t cos t) / sin^3 t; four Taylor terms below 1e-3 where the quotient cancels.
double removable_quotient(double t) {
  if (t < 1e-3) {
    const double t2 = t * t;
    return 1.0 / 3.0 + t2 * (2.0 / 15.0 + t2 * (2.0 / 63.0 + t2 * (4.0 / 675.0)));
  }
  const double s = std::sin(t);
  return (s - t * std::cos(t)) / (s * s * s);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_depth < 1 || max_depth > 20) {
    throw ArgumentError("quadrature tolerances must be positive and max_depth in [1, 20]");
  }
}

double phi(double theta, const KappaParams& params, const QuadratureSpec& quad) {
  if (!(theta >= 0.0 && theta <= kPi)) throw ArgumentError("phi: theta must lie in [0, pi]");
  quad.validate();
  if (theta == 0.0) return 0.0;
  if (theta == kPi) return 1.0;
  if (theta > 0.5 * kPi) return 1.0 - phi(kPi - theta, params, quad);
  const double lambda = params.lambda;
  const double integral =
      integrate([lambda](double t) { return std::pow(std::sin(t), lambda); }, 0.0, theta, quad, "phi");
  return params.c_kappa * integral;
}

double below_probability(double x, double y, const KappaParams& params, const QuadratureSpec& quad) {
  const std::complex<double> z(x, y);
  if (!(std::abs(z - 0.5) < 0.5)) throw ArgumentError("below_probability: point must lie inside the disk");
  const std::complex<double> w = std::complex<double>(0.0, 1.0) * z / (1.0 - z);
  const double theta = std::clamp(std::arg(w), 0.0, kPi);
  return phi(theta, params, quad);
}

double a_kappa_quadrature(const KappaParams& params, const QuadratureSpec& quad) {
  quad.validate();
  const double lambda = params.lambda;
  auto integrand = [lambda](double t) { return removable_quotient(t) * std::pow(std::cos(t), lambda); };
  const double head = integrate(integrand, 0.0, 1e-3, quad, "a_kappa_quadrature");
  const double tail = integrate(integrand, 1e-3, 0.5 * kPi, quad, "a_kappa_quadrature");
  return params.c_kappa / 4.0 * (head + tail) - 1.0 / 24.0;
}

std::optional<double> a_kappa_closed_form(const KappaParams& params) {
  const double rounded = std::round(params.lambda);
  if (std::abs(params.lambda - rounded) > 1e-9 || rounded < 0.0 || rounded > 6.0) return std::nullopt;
  const double ln2 = std::numbers::ln2;
  const double g = kCatalan;
  switch (static_cast<int>(rounded)) {
    case 0: return 1.0 / 48.0;
    case 1: return (6.0 * g - 5.0) / 48.0;
    case 2: return 0.25 * ln2 - 1.0 / 6.0;
    case 3: return (54.0 * g - 49.0) / 96.0;
    case 4: return 2.0 / 3.0 * ln2 - 11.0 / 24.0;
    case 5: return (150.0 * g - 137.0) / 128.0;
    case 6: return 1.2 * ln2 - 199.0 / 240.0;
  }
  return std::nullopt;
}

double a_kappa_double_integral(const KappaParams& params, const QuadratureSpec& quad) {
  quad.validate();
  // p(x, -y) = 1 - p(x, y), so int_D y p = int_{D, y > 0} y (2p - 1).
  const QuadratureSpec phi_quad{};
  auto radial = [&](double psi) {
    const double s = std::sin(psi);
    const double c = std::cos(psi);
    auto inner = [&](double rho) {
      if (rho <= 0.0 || rho >= 0.5 - 1e-14) return 0.0;  // keep rounding from leaving the disk
      const double x = 0.5 + rho * c;
      const double y = rho * s;
      return y * (2.0 * below_probability(x, y, params, phi_quad) - 1.0) * rho;
    };
    return integrate(inner, 0.0, 0.5, quad, "a_kappa_double_integral (radial)");
  };
  const double moment = integrate(radial, 0.0, kPi, quad, "a_kappa_double_integral (angular)");
  return 1.0 / 12.0 - moment;
}

double radial_integral(double theta) {
  if (!(theta >= 0.0 && theta < 0.5 * kPi)) throw ArgumentError("radial_integral: theta must lie in [0, pi/2)");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double c2 = c * c;
  return (2.0 * s * s + 1.0) * (0.5 * kPi - theta - s * c) / (8.0 * c2 * c2) - std::tan(theta) / 4.0;
}

double radial_integral_quadrature(double theta, const QuadratureSpec& quad) {
  if (!(theta >= 0.0 && theta < 0.5 * kPi)) throw ArgumentError("radial_integral_quadrature: theta out of range");
  const double s = std::sin(theta);
  auto f = [s](double r) {
    const double d = r * r + 1.0 + 2.0 * r * s;
    return r * r / (d * d * d);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(f, quad.rel_tol, &error, &l1);
  if (error > std::max(quad.abs_tol, quad.rel_tol * l1) * 10.0) {
    throw NumericError("radial_integral_quadrature: no convergence");
  }
  return std::cos(theta) * value;
}

double reflected_radial_integral(double theta) {
  if (!(theta > 0.0 && theta <= 0.5 * kPi)) throw ArgumentError("reflected_radial_integral: theta out of range");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double s2 = s * s;
  return (3.0 * theta - 2.0 * theta * s2 - 3.0 * c * s) / (8.0 * s2 * s2);
}

double reflected_radial_tail(double t) {
  if (!(t >= 0.0 && t <= 0.5 * kPi)) throw ArgumentError("reflected_radial_tail: t out of range");
  return (1.0 - removable_quotient(t)) / 8.0;
}

ExpectedSignature3 expected_signature_level3(const KappaParams& params, const QuadratureSpec& quad) {
  ExpectedSignature3 out;
  const auto closed = a_kappa_closed_form(params);
  out.a_kappa = closed ? *closed : a_kappa_quadrature(params, quad);
  auto& s = out.coeffs;
  s.coeffs().setZero();
  s[Word("")] = 1.0;
  s[Word("1")] = 1.0;
  s[Word("11")] = 0.5;
  s[Word("111")] = 1.0 / 6.0;
  s[Word("122")] = out.a_kappa;
  s[Word("212")] = -2.0 * out.a_kappa;
  s[Word("221")] = out.a_kappa;
  return out;
}

std::vector<AKappaRow> a_kappa_table(const QuadratureSpec& quad) {
  std::vector<AKappaRow> rows;
  for (int lambda = 0; lambda <= 6; ++lambda) {
    const double kappa = 8.0 / (lambda + 2.0);
    const KappaParams params = KappaParams::from_kappa(kappa);
    AKappaRow row;
    row.kappa = kappa;
    row.lambda = lambda;
    row.closed_form = *a_kappa_closed_form(params);
    row.quadrature = a_kappa_quadrature(params, quad);
    row.abs_diff = std::abs(row.closed_form - row.quadrature);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sle

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "sle/kappa.hpp"

namespace sle {

using Complex = std::complex<double>;

/// Domain a PlanarPath lives in. `plane` carries no constraint and is used for synthetic polylines.
enum class Domain { upper_half_plane, unit_disk, small_disk, plane };

std::string_view to_string(Domain d);

/// Capacity-time grid 0 = t_0 < t_1 < ... < t_n.
///
/// `uniform` spaces the times by dt. `geometric` places t_1 = t_first and t_n = t_last with a
/// constant ratio between consecutive times, so every step moves the tip by the same fraction of
/// its current scale. Experiments that look at a disk image from endpoint to endpoint need the
/// geometric grid: the region near the far endpoint corresponds to capacities many decades larger
/// than the region near the start.
struct TimeGrid {
  enum class Kind { uniform, geometric };

  Kind kind = Kind::uniform;
  std::size_t n_steps = 1000;
  double dt = 1e-3;
  double t_first = 1e-4;
  double t_last = 1e4;

  static TimeGrid uniform(std::size_t n_steps, double dt);
  static TimeGrid geometric(std::size_t n_steps, double t_first, double t_last);

  /// The n_steps + 1 grid times. Throws ArgumentError on invalid settings.
  std::vector<double> times() const;
};

/// Brownian driving path sampled on a grid and held constant on each step (t_{k-1}, t_k].
struct DrivingFunction {
  std::vector<double> times;
  std::vector<double> values;
  std::uint64_t seed = 0;
  double dt = 0.0;  // uniform spacing; the first step for a geometric grid

  std::size_t n_steps() const { return values.size() - 1; }
  double step(std::size_t k) const { return times[k] - times[k - 1]; }

  /// Validates values[0] == 0, equal lengths >= 2 and strictly increasing times from 0.
  static DrivingFunction from_values(std::vector<double> times, std::vector<double> values,
                                     std::uint64_t seed = 0);
};

/// n_steps Gaussian increments of variance dt on a uniform grid.
DrivingFunction sample_driving(const KappaParams& params, std::size_t n_steps, double dt,
                               std::uint64_t seed);
/// Gaussian increments of variance t_k - t_{k-1} on an arbitrary grid.
DrivingFunction sample_driving(const KappaParams& params, const TimeGrid& grid, std::uint64_t seed);
/// B == 0 on the grid; the trace is then the vertical ray i*sqrt(2at).
DrivingFunction zero_driving(const TimeGrid& grid);

/// The same Brownian path observed at every `stride`-th grid time (t_0 = 0 kept). Throws
/// ArgumentError unless stride divides n_steps.
DrivingFunction coarsen(const DrivingFunction& driving, std::size_t stride);

/// Time-stamped polyline in the complex plane.
class PlanarPath {
 public:
  /// Throws ArgumentError unless lengths agree, are >= 2, times increase strictly and the points
  /// lie in the closure of `domain` (tolerance 1e-9).
  PlanarPath(std::vector<double> times, std::vector<Complex> points, Domain domain);

  const std::vector<double>& times() const { return times_; }
  const std::vector<Complex>& points() const { return points_; }
  Domain domain() const { return domain_; }
  std::size_t size() const { return points_.size(); }

  /// Linear interpolation of the polyline at time t (clamped to the time range).
  Complex at(double t) const;

 private:
  std::vector<double> times_;
  std::vector<Complex> points_;
  Domain domain_;
};

/// Square root with nonnegative imaginary part; the cut lies along [0, inf).
template <class Scalar>
std::complex<Scalar> upper_sqrt(std::complex<Scalar> z) {
  std::complex<Scalar> s = std::sqrt(z);
  if (s.imag() < Scalar(0) || (s.imag() == Scalar(0) && s.real() < Scalar(0))) s = -s;
  return s;
}

/// One Loewner step with driving value u held for time dt:
///   g(z) = -u + sqrt((z + u)^2 + 2 a dt).
template <class Scalar>
std::complex<Scalar> elementary_forward_map(std::complex<Scalar> z, Scalar u, Scalar dt, Scalar a) {
  const std::complex<Scalar> s = z + u;
  return -u + upper_sqrt(s * s + Scalar(2) * a * dt);
}

/// Inverse of elementary_forward_map; maps the upper half-plane onto itself minus the vertical
/// slit from -u to -u + i sqrt(2 a dt):
///   f(w) = -u + sqrt((w + u)^2 - 2 a dt).
template <class Scalar>
std::complex<Scalar> elementary_inverse_map(std::complex<Scalar> w, Scalar u, Scalar dt, Scalar a) {
  const std::complex<Scalar> s = w + u;
  return -u + upper_sqrt(s * s - Scalar(2) * a * dt);
}

/// H -> unit disk, 0 -> 1, i -> 0, inf -> -1.
template <class Scalar>
std::complex<Scalar> unit_disk_map(std::complex<Scalar> z) {
  const std::complex<Scalar> i(0, 1);
  return (i - z) / (i + z);
}

template <class Scalar>
std::complex<Scalar> unit_disk_map_inverse(std::complex<Scalar> zeta) {
  const std::complex<Scalar> i(0, 1);
  return i * (Scalar(1) - zeta) / (Scalar(1) + zeta);
}

/// H -> disk of radius 1/2 about 1/2, 0 -> 0, i -> 1/2, inf -> 1.
template <class Scalar>
std::complex<Scalar> small_disk_map(std::complex<Scalar> w) {
  return w / (w + std::complex<Scalar>(0, 1));
}

template <class Scalar>
std::complex<Scalar> small_disk_map_inverse(std::complex<Scalar> z) {
  return std::complex<Scalar>(0, 1) * z / (Scalar(1) - z);
}

/// Tip positions gamma(t_k), k = 0..n, obtained by composing inverse elementary maps
/// f_1 o ... o f_k at the slit tip of step k. O(n^2); the compositions of all tips run together
/// so the inner loop vectorizes. Throws NumericError naming the step if a tip overflows.
PlanarPath compute_trace(const DrivingFunction& driving, const KappaParams& params);

/// Single tip gamma(t_k) composed one map at a time. Used for cross-checking compute_trace.
Complex trace_point(const DrivingFunction& driving, const KappaParams& params, std::size_t k);

/// Forward composition g_{t_k}(z) of the first k steps.
Complex forward_flow(const DrivingFunction& driving, const KappaParams& params, Complex z,
                     std::size_t k);

PlanarPath to_unit_disk(const PlanarPath& path);
PlanarPath to_small_disk(const PlanarPath& path);

enum class Side { right, left, undecided };

std::string_view to_string(Side s);

/// Which side of the curve z ends on. The forward flow moves z; once
/// |Re(g_t(z) + B_t)| / Im(g_t(z) + B_t) exceeds `threshold` the sign of the real part decides:
/// positive means z lies to the right of the curve. `undecided` if the driving ends first.
Side left_passage_side(const DrivingFunction& driving, const KappaParams& params, Complex z,
                       double threshold = 100.0);

/// Disk path truncated where it first comes within delta of its target endpoint, with a straight
/// segment appended to the endpoint.
struct ClosedPath {
  PlanarPath path;
  double closure_length = 0.0;     // length of the appended segment
  std::size_t kept_vertices = 0;   // vertices of the input that were kept
  bool reached = false;            // false when the input ended before getting within delta
};

/// Endpoint is 1 for small-disk paths and -1 for unit-disk paths.
ClosedPath close_at_endpoint(const PlanarPath& disk_path, double delta);

}  // namespace sle

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sle/loewner.hpp"

namespace sle {

/// Open annulus r < |z - center| < R.
struct Annulus {
  Complex center{0.0, 0.0};
  double r = 0.0;
  double R = 0.0;

  /// Throws ArgumentError unless 0 < r < R and all fields are finite.
  void validate() const;
};

enum class Label : char { inside = 'I', outside = 'O' };

/// Crossing times of an annulus. tau0 is the first time the path is not inside the open annulus;
/// tau[i] is the first time after the previous one that the path reaches the boundary set it was
/// not last on (closed inner disk or closed exterior of the outer disk), labelled I or O.
struct CrossingRecord {
  std::optional<double> tau0;
  std::vector<double> tau;
  std::vector<Label> labels;

  std::size_t count() const { return tau.size(); }
};

/// Exact segment-circle intersection on each polyline segment. A segment that only grazes a
/// circle (squared closest distance within 1e-12 relative of the radius squared) does not count.
/// Throws ArgumentError for an invalid annulus.
CrossingRecord crossing_times(const PlanarPath& path, const Annulus& annulus);

/// Binomial proportion with a Wilson 95% interval.
struct ProportionEstimate {
  std::size_t successes = 0;
  std::size_t trials = 0;
  double estimate = 0.0;      // successes / trials
  double half_width = 0.0;    // Wilson half-width
};

ProportionEstimate wilson_estimate(std::size_t successes, std::size_t trials);

/// Log-log fit of crossing probability against r / R.
struct DecayFit {
  std::vector<double> ratios;
  std::vector<double> probabilities;
  std::vector<double> half_widths;
  double fitted_slope = 0.0;
  /// Standard error of the slope, propagated from the binomial variance of each estimate.
  double slope_stderr = 0.0;
  double bound_slope = 0.0;   // (beta / 2) (floor(k / 2) - 1)
  std::vector<std::string> warnings;
};

struct DecayPoint {
  double ratio = 0.0;
  double probability = 0.0;
  double half_width = 0.0;
  std::size_t trials = 0;
};

/// Least-squares slope of log p against log(r / R). Zero estimates are dropped with a warning;
/// throws NumericError when fewer than 2 points remain and ArgumentError on ratios outside (0, 1)
/// or probabilities outside [0, 1].
DecayFit fit_decay(const std::vector<DecayPoint>& points, int k, const KappaParams& params);

/// (beta / 2) (floor(k / 2) - 1).
double decay_bound_slope(int k, const KappaParams& params);

/// Number of Dyck paths of length 2 ell. Throws ArgumentError for ell outside [0, 30].
std::uint64_t catalan_number(int ell);

/// Cells of the grid with spacing ell / sqrt(2) met by the polyline.
std::size_t box_count(const PlanarPath& path, double ell);

/// Fewest pieces of diameter <= ell partitioning the polyline in order. Pieces may end inside a
/// segment; greedy furthest extension is optimal.
std::size_t tortuosity_segments(const PlanarPath& path, double ell);

/// Log-log slope of counts against 1 / ell.
struct ScalingFit {
  std::vector<double> ells;
  std::vector<double> counts;
  double slope = 0.0;
  double slope_stderr = 0.0;
};

/// Least-squares slope of log count against log(1 / ell), ignoring the first `discard` scales.
/// Throws NumericError when fewer than 2 scales remain or a count is not positive.
ScalingFit fit_scaling(const std::vector<double>& ells, const std::vector<double>& counts, int discard = 2);

/// ell0 * 2^{-j}, j = 0..levels-1.
std::vector<double> dyadic_ladder(double ell0, int levels);

}  // namespace sle

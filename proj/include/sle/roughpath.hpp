#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sle/loewner.hpp"

namespace sle {

/// Strictly increasing times covering [t_start, t_end].
class Partition {
 public:
  explicit Partition(std::vector<double> times);
  static Partition of(const PlanarPath& path) { return Partition(path.times()); }

  const std::vector<double>& times() const { return times_; }
  double mesh() const;
  /// Each interval split into 2^level equal pieces.
  Partition refined(int level) const;

 private:
  std::vector<double> times_;
};

enum class Coordinate { real, imag };

/// Riemann-Stieltjes sum used for the Young integral.
///   trapezoid:      sum (f(t_{j-1}) + f(t_j)) / 2 * (g(t_j) - g(t_{j-1}))
///   right_endpoint: sum f(t_j) * (g(t_j) - g(t_{j-1}))
/// Both converge to the same limit under the Young condition. The trapezoid sum is exact for
/// piecewise-linear f and g on a partition containing their vertices.
enum class StieltjesRule { trapezoid, right_endpoint };

struct YoungIntegral {
  double value = 0.0;          // sum on the finest partition
  double extrapolated = 0.0;   // Richardson estimate from the two finest sums
  std::vector<double> sums;    // one per refinement level, coarsest first
};

/// int f dg where g is one coordinate of the polyline, linearly interpolated, and f is evaluated
/// at the partition times. Level 0 is the vertex partition; level l splits each interval into 2^l.
YoungIntegral young_integral(const std::function<double(double)>& f, const PlanarPath& g,
                             Coordinate coordinate, int refinement_levels,
                             StieltjesRule rule = StieltjesRule::trapezoid);

/// Same with f given by its values at the path vertices (linear in between). Throws ArgumentError
/// when the sample count differs from the vertex count.
YoungIntegral young_integral(std::span<const double> f_samples, const PlanarPath& g, Coordinate coordinate,
                             int refinement_levels, StieltjesRule rule = StieltjesRule::trapezoid);

/// p-variation with partitions restricted to vertex times, by dynamic programming in O(n^2).
/// A lower bound for the supremum over all partitions, exact for p = 1 and whenever no segment
/// is retraced. Throws ArgumentError for p < 1.
double p_variation(const PlanarPath& path, double p);

/// Closed-segment intersection test with slack `tol` on orientation tests.
bool segments_intersect(Complex a, Complex b, Complex c, Complex d, double tol = 1e-12);

/// Raised when a polyline cannot be made simple; names the offending segment pair by the indices
/// of their first vertices.
class SimplicityError : public NumericError {
 public:
  SimplicityError(const std::string& what, std::size_t first, std::size_t second)
      : NumericError(what), first_segment(first), second_segment(second) {}
  std::size_t first_segment;
  std::size_t second_segment;
};

/// Sub-polyline through a subset of the vertices with time gaps and chord lengths below epsilon
/// and no intersecting segments. Greedy: from the current vertex take the farthest admissible
/// vertex whose chord avoids earlier chords and the remaining curve.
PlanarPath simple_approximation(const PlanarPath& path, double epsilon);

/// Index pair of the first intersecting non-adjacent segment pair, if any. O(m^2).
std::optional<std::pair<std::size_t, std::size_t>> first_self_intersection(const std::vector<Complex>& points,
                                                                           double tol = 1e-12);

}  // namespace sle

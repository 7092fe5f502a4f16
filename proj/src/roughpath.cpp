#include "sle/roughpath.hpp"

#include <algorithm>
#include <cmath>

namespace sle {

Partition::Partition(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) throw ArgumentError("partition needs at least 2 times");
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!(times_[k] > times_[k - 1])) throw ArgumentError("partition times must increase strictly");
  }
}

double Partition::mesh() const {
  double m = 0.0;
  for (std::size_t k = 1; k < times_.size(); ++k) m = std::max(m, times_[k] - times_[k - 1]);
  return m;
}

Partition Partition::refined(int level) const {
  if (level < 0 || level > 30) throw ArgumentError("refinement level must lie in [0, 30]");
  const std::size_t split = std::size_t{1} << level;
  std::vector<double> out;
  out.reserve((times_.size() - 1) * split + 1);
  for (std::size_t k = 1; k < times_.size(); ++k) {
    const double t0 = times_[k - 1];
    const double h = (times_[k] - t0) / static_cast<double>(split);
    for (std::size_t s = 0; s < split; ++s) out.push_back(t0 + h * static_cast<double>(s));
  }
  out.push_back(times_.back());
  return Partition(std::move(out));
}

namespace {

double coordinate_of(Complex z, Coordinate c) { return c == Coordinate::real ? z.real() : z.imag(); }

YoungIntegral young_sums(const std::function<double(double)>& f, const PlanarPath& g, Coordinate coordinate,
                         int refinement_levels, StieltjesRule rule) {
  if (refinement_levels < 1) throw ArgumentError("young_integral needs at least one refinement level");
  const Partition base = Partition::of(g);
  YoungIntegral out;
  for (int level = 0; level < refinement_levels; ++level) {
    const Partition part = base.refined(level);
    const auto& t = part.times();
    double sum = 0.0;
    double f_prev = f(t[0]);
    double g_prev = coordinate_of(g.at(t[0]), coordinate);
    for (std::size_t j = 1; j < t.size(); ++j) {
      const double f_cur = f(t[j]);
      const double g_cur = coordinate_of(g.at(t[j]), coordinate);
      const double weight = rule == StieltjesRule::trapezoid ? 0.5 * (f_prev + f_cur) : f_cur;
      sum += weight * (g_cur - g_prev);
      f_prev = f_cur;
      g_prev = g_cur;
    }
    out.sums.push_back(sum);
  }
  out.value = out.sums.back();
  out.extrapolated = out.value;
  if (out.sums.size() >= 2) {
    // Trapezoid error is O(h^2) for smooth integrands, right-endpoint error O(h).
    const double factor = rule == StieltjesRule::trapezoid ? 3.0 : 1.0;
    out.extrapolated = out.value + (out.value - out.sums[out.sums.size() - 2]) / factor;
  }
  return out;
}

}  // namespace

YoungIntegral young_integral(const std::function<double(double)>& f, const PlanarPath& g, Coordinate coordinate,
                             int refinement_levels, StieltjesRule rule) {
  return young_sums(f, g, coordinate, refinement_levels, rule);
}

YoungIntegral young_integral(std::span<const double> f_samples, const PlanarPath& g, Coordinate coordinate,
                             int refinement_levels, StieltjesRule rule) {
  if (f_samples.size() != g.size()) {
    throw ArgumentError("young_integral: " + std::to_string(f_samples.size()) + " samples for a grid of " +
                        std::to_string(g.size()) + " vertices");
  }
  const auto& times = g.times();
  auto f = [&](double t) {
    if (t <= times.front()) return f_samples.front();
    if (t >= times.back()) return f_samples.back();
    const auto k = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
    const double s = (t - times[k - 1]) / (times[k] - times[k - 1]);
    return f_samples[k - 1] + s * (f_samples[k] - f_samples[k - 1]);
  };
  return young_sums(f, g, coordinate, refinement_levels, rule);
}

double p_variation(const PlanarPath& path, double p) {
  if (!(p >= 1.0)) throw ArgumentError("p-variation needs p >= 1");
  const auto& z = path.points();
  const std::size_t n = z.size();
  // best[j]: largest sum of |increment|^p over partitions of vertices 0..j ending at j.
  std::vector<double> best(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    double m = 0.0;
    for (std::size_t i = 0; i < j; ++i) m = std::max(m, best[i] + std::pow(std::abs(z[j] - z[i]), p));
    best[j] = m;
  }
  return std::pow(best[n - 1], 1.0 / p);
}

namespace {

double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

// Sign of the orientation of (a, b, c) with a relative dead band.
int orientation(Complex a, Complex b, Complex c, double tol) {
  const double o = cross(b - a, c - a);
  const double scale = std::abs(b - a) * std::abs(c - a);
  if (std::abs(o) <= tol * std::max(scale, 1e-300)) return 0;
  return o > 0.0 ? 1 : -1;
}

bool on_segment(Complex a, Complex b, Complex p, double tol) {
  const double span = std::abs(b - a);
  const double slack = tol * std::max(span, 1.0);
  return p.real() >= std::min(a.real(), b.real()) - slack && p.real() <= std::max(a.real(), b.real()) + slack &&
         p.imag() >= std::min(a.imag(), b.imag()) - slack && p.imag() <= std::max(a.imag(), b.imag()) + slack;
}

// Segments (a, shared) and (shared, d) overlap beyond their common vertex.
bool folds_back(Complex a, Complex shared, Complex d, double tol) {
  if (orientation(a, shared, d, tol) != 0) return false;
  const Complex u = a - shared;
  const Complex v = d - shared;
  return u.real() * v.real() + u.imag() * v.imag() > 0.0;
}

}  // namespace

bool segments_intersect(Complex a, Complex b, Complex c, Complex d, double tol) {
  const int o1 = orientation(a, b, c, tol);
  const int o2 = orientation(a, b, d, tol);
  const int o3 = orientation(c, d, a, tol);
  const int o4 = orientation(c, d, b, tol);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(a, b, c, tol)) return true;
  if (o2 == 0 && on_segment(a, b, d, tol)) return true;
  if (o3 == 0 && on_segment(c, d, a, tol)) return true;
  if (o4 == 0 && on_segment(c, d, b, tol)) return true;
  return false;
}

std::optional<std::pair<std::size_t, std::size_t>> first_self_intersection(const std::vector<Complex>& z,
                                                                           double tol) {
  const std::size_t m = z.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = i + 1; j + 1 < m; ++j) {
      const bool hit = (j == i + 1) ? folds_back(z[i], z[i + 1], z[j + 1], tol)
                                    : segments_intersect(z[i], z[i + 1], z[j], z[j + 1], tol);
      if (hit) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

PlanarPath simple_approximation(const PlanarPath& path, double epsilon) {
  if (!(epsilon > 0.0)) throw ArgumentError("simple_approximation needs epsilon > 0");
  constexpr double tol = 1e-12;
  const auto& z = path.points();
  const auto& t = path.times();
  const std::size_t n = z.size();
  bool fine = true;
  for (std::size_t k = 0; k + 1 < n && fine; ++k) fine = t[k + 1] - t[k] < epsilon && std::abs(z[k + 1] - z[k]) < epsilon;
  if (fine && !first_self_intersection(z, tol)) return path;

  std::vector<std::size_t> chosen{0};

  // Chord (i, j) must miss all earlier chords and every original segment after j.
  auto admissible = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c + 1 < chosen.size(); ++c) {
      const std::size_t a = chosen[c];
      const std::size_t b = chosen[c + 1];
      const bool hit = (b == i) ? folds_back(z[a], z[i], z[j], tol) : segments_intersect(z[a], z[b], z[i], z[j], tol);
      if (hit) return false;
    }
    for (std::size_t k = j; k + 1 < n; ++k) {
      const bool hit = (k == j) ? folds_back(z[i], z[j], z[j + 1], tol)
                                : segments_intersect(z[i], z[j], z[k], z[k + 1], tol);
      if (hit) return false;
    }
    return true;
  };

  std::size_t i = 0;
  while (i + 1 < n) {
    if (!(t[i + 1] - t[i] < epsilon) || !(std::abs(z[i + 1] - z[i]) < epsilon)) {
      throw SimplicityError("simple_approximation: step " + std::to_string(i) + " already exceeds epsilon", i, i + 1);
    }
    std::size_t j_max = i + 1;
    while (j_max + 1 < n && t[j_max + 1] - t[i] < epsilon && std::abs(z[j_max + 1] - z[i]) < epsilon) ++j_max;
    std::size_t next = 0;
    for (std::size_t j = j_max; j > i; --j) {
      if (std::abs(z[j] - z[i]) < epsilon && admissible(i, j)) {
        next = j;
        break;
      }
    }
    if (next == 0) {
      throw SimplicityError("simple_approximation: no admissible chord from vertex " + std::to_string(i) +
                                " (input is not simple)", i, i + 1);
    }
    chosen.push_back(next);
    i = next;
  }

  std::vector<double> times;
  std::vector<Complex> points;
  for (std::size_t k : chosen) {
    times.push_back(t[k]);
    points.push_back(z[k]);
  }
  if (auto bad = first_self_intersection(points, tol)) {
    throw SimplicityError("simple_approximation: output segments " + std::to_string(bad->first) + " and " +
                              std::to_string(bad->second) + " intersect", bad->first, bad->second);
  }
  return PlanarPath(std::move(times), std::move(points), path.domain());
}

}  // namespace sle

#include "sle/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace sle {

void Annulus::validate() const {
  if (!std::isfinite(center.real()) || !std::isfinite(center.imag()) || !std::isfinite(R) || !(r > 0.0) ||
      !(R > r)) {
    throw ArgumentError("annulus needs finite center and 0 < r < R");
  }
}

namespace {

constexpr double kGraze = 1e-12;

// Quadratic |p + s d|^2 - rho^2 along a segment whose start p is relative to the center.
struct CircleCut {
  double s_min = 0.0;   // parameter of the closest approach
  double gap = 0.0;     // rho^2 - (closest distance)^2
  double half = 0.0;    // half-length of the parameter interval inside the circle
  bool inside_somewhere = false;
};

CircleCut cut(Complex p, Complex d, double rho) {
  CircleCut c;
  const double A = std::norm(d);
  if (A == 0.0) {
    c.gap = rho * rho - std::norm(p);
    c.inside_somewhere = c.gap >= 0.0;
    return c;
  }
  c.s_min = -(p.real() * d.real() + p.imag() * d.imag()) / A;
  c.gap = rho * rho - std::norm(p + c.s_min * d);
  c.inside_somewhere = c.gap > kGraze * rho * rho;
  if (c.inside_somewhere) c.half = std::sqrt(c.gap / A);
  return c;
}

// First s in [s0, 1] with |p + s d| <= rho, grazes excluded.
std::optional<double> first_entry(Complex p, Complex d, double rho, double s0) {
  if (std::norm(p + s0 * d) <= rho * rho) return s0;
  const CircleCut c = cut(p, d, rho);
  if (!c.inside_somewhere || std::norm(d) == 0.0) return std::nullopt;
  const double lo = c.s_min - c.half;
  const double hi = c.s_min + c.half;
  if (hi < s0) return std::nullopt;
  const double s = std::max(lo, s0);
  if (s > 1.0) return std::nullopt;
  return s;
}

// First s in [s0, 1] with |p + s d| >= rho.
std::optional<double> first_exit(Complex p, Complex d, double rho, double s0) {
  if (std::norm(p + s0 * d) >= rho * rho) return s0;
  if (std::norm(p + d) < rho * rho) return std::nullopt;
  const CircleCut c = cut(p, d, rho);
  return std::clamp(c.s_min + c.half, s0, 1.0);
}

}  // namespace

CrossingRecord crossing_times(const PlanarPath& path, const Annulus& annulus) {
  annulus.validate();
  const auto& z = path.points();
  const auto& t = path.times();
  const std::size_t n = z.size();
  CrossingRecord rec;

  auto time_at = [&](std::size_t k, double s) { return t[k] + s * (t[k + 1] - t[k]); };
  auto rel = [&](std::size_t k) { return z[k] - annulus.center; };

  // tau0
  std::size_t seg = 0;
  double s = 0.0;
  bool at_inner = false;
  {
    bool found = false;
    const double d0 = std::abs(rel(0));
    if (d0 <= annulus.r || d0 >= annulus.R) {
      rec.tau0 = t[0];
      at_inner = d0 <= annulus.r;
      found = true;
    }
    for (std::size_t k = 0; !found && k + 1 < n; ++k) {
      const Complex p = rel(k);
      const Complex d = z[k + 1] - z[k];
      const auto in = first_entry(p, d, annulus.r, 0.0);
      const auto out = first_exit(p, d, annulus.R, 0.0);
      if (!in && !out) continue;
      const bool inner = in && (!out || *in <= *out);
      s = inner ? *in : *out;
      seg = k;
      at_inner = inner;
      rec.tau0 = time_at(k, s);
      found = true;
    }
    if (!found) return rec;
  }
  while (seg + 1 < n) {
    const Complex p = rel(seg);
    const Complex d = z[seg + 1] - z[seg];
    const auto hit = at_inner ? first_exit(p, d, annulus.R, s) : first_entry(p, d, annulus.r, s);
    if (!hit) {
      ++seg;
      s = 0.0;
      continue;
    }
    s = *hit;
    at_inner = !at_inner;
    rec.tau.push_back(time_at(seg, s));
    rec.labels.push_back(at_inner ? Label::inside : Label::outside);
  }
  return rec;
}

ProportionEstimate wilson_estimate(std::size_t successes, std::size_t trials) {
  if (trials == 0 || successes > trials) throw ArgumentError("wilson_estimate needs 0 <= successes <= trials, trials > 0");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  ProportionEstimate e;
  e.successes = successes;
  e.trials = trials;
  e.estimate = p;
  e.half_width = z / denom * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
  return e;
}

double decay_bound_slope(int k, const KappaParams& params) {
  if (k < 1) throw ArgumentError("crossing count k must be >= 1");
  return params.beta / 2.0 * static_cast<double>(k / 2 - 1);
}

DecayFit fit_decay(const std::vector<DecayPoint>& points, int k, const KappaParams& params) {
  DecayFit fit;
  fit.bound_slope = decay_bound_slope(k, params);
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> var;
  for (const auto& pt : points) {
    if (!(pt.ratio > 0.0 && pt.ratio < 1.0)) throw ArgumentError("decay ratios must lie in (0, 1)");
    if (!(pt.probability >= 0.0 && pt.probability <= 1.0)) throw ArgumentError("probabilities must lie in [0, 1]");
    fit.ratios.push_back(pt.ratio);
    fit.probabilities.push_back(pt.probability);
    fit.half_widths.push_back(pt.half_width);
    if (pt.probability == 0.0) {
      fit.warnings.push_back("ratio " + std::to_string(pt.ratio) + ": zero estimate excluded from the fit");
      continue;
    }
    const double p = pt.probability;
    double var_p = 0.0;
    if (pt.trials > 0) {
      var_p = p * (1.0 - p) / static_cast<double>(pt.trials);
    } else {
      const double sd = pt.half_width / 1.959963984540054;
      var_p = sd * sd;
    }
    x.push_back(std::log(pt.ratio));
    y.push_back(std::log(p));
    var.push_back(var_p / (p * p));
  }
  if (x.size() < 2) throw NumericError("fit_decay: fewer than 2 positive estimates");
  const double m = static_cast<double>(x.size());
  const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - xbar) * (x[i] - xbar);
    sxy += (x[i] - xbar) * (y[i] - ybar);
  }
  if (!(sxx > 0.0)) throw NumericError("fit_decay: ratios must not all coincide");
  fit.fitted_slope = sxy / sxx;
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = (x[i] - xbar) / sxx;
    v += c * c * var[i];
  }
  fit.slope_stderr = std::sqrt(v);
  return fit;
}

std::uint64_t catalan_number(int ell) {
  if (ell < 0 || ell > 30) throw ArgumentError("catalan_number: ell must lie in [0, 30]");
  std::uint64_t c = 1;
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(ell); ++j) c = c * 2 * (2 * j + 1) / (j + 2);
  return c;
}

std::size_t box_count(const PlanarPath& path, double ell) {
  if (!(ell > 0.0)) throw ArgumentError("box_count needs ell > 0");
  const double h = ell / std::sqrt(2.0);
  const auto& z = path.points();
  std::vector<std::pair<long long, long long>> cells;
  auto cell = [h](double v) { return static_cast<long long>(std::floor(v / h)); };
  constexpr double inf = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k + 1 < z.size(); ++k) {
    const Complex a = z[k];
    const Complex b = z[k + 1];
    long long ix = cell(a.real());
    long long iy = cell(a.imag());
    const long long ex = cell(b.real());
    const long long ey = cell(b.imag());
    cells.emplace_back(ix, iy);
    const double dx = b.real() - a.real();
    const double dy = b.imag() - a.imag();
    const long long sx = ex > ix ? 1 : -1;
    const long long sy = ey > iy ? 1 : -1;
    double next_x = dx != 0.0 ? ((static_cast<double>(ix) + (sx > 0 ? 1.0 : 0.0)) * h - a.real()) / dx : inf;
    double next_y = dy != 0.0 ? ((static_cast<double>(iy) + (sy > 0 ? 1.0 : 0.0)) * h - a.imag()) / dy : inf;
    const double step_x = dx != 0.0 ? h / std::abs(dx) : inf;
    const double step_y = dy != 0.0 ? h / std::abs(dy) : inf;
    while (ix != ex || iy != ey) {
      const bool move_x = iy == ey || (ix != ex && next_x < next_y);
      if (move_x) {
        ix += sx;
        next_x += step_x;
      } else {
        iy += sy;
        next_y += step_y;
      }
      cells.emplace_back(ix, iy);
    }
  }
  if (z.size() == 1) cells.emplace_back(cell(z[0].real()), cell(z[0].imag()));
  std::sort(cells.begin(), cells.end());
  return static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

std::size_t tortuosity_segments(const PlanarPath& path, double ell) {
  if (!(ell > 0.0)) throw ArgumentError("tortuosity_segments needs ell > 0");
  const double lim = ell * (1.0 + 1e-12);
  const double lim2 = lim * lim;
  const auto& z = path.points();
  std::size_t pieces = 1;
  std::vector<Complex> members{z[0]};
  std::size_t k = 0;
  double s = 0.0;
  while (k + 1 < z.size()) {
    const Complex b = z[k + 1];
    const bool fits = std::all_of(members.begin(), members.end(), [&](Complex m) { return std::norm(b - m) <= lim2; });
    if (fits) {
      members.push_back(b);
      ++k;
      s = 0.0;
      continue;
    }
    // Furthest point of the segment keeping every member within ell.
    const Complex d = b - z[k];
    const double A = std::norm(d);
    double s_max = 1.0;
    for (Complex m : members) {
      const Complex p = z[k] - m;
      const double B = p.real() * d.real() + p.imag() * d.imag();
      const double C = std::norm(p) - lim2;
      const double disc = std::max(B * B - A * C, 0.0);
      s_max = std::min(s_max, (-B + std::sqrt(disc)) / A);
    }
    s = std::max(s, s_max);
    members.assign(1, z[k] + s * d);
    ++pieces;
  }
  return pieces;
}

ScalingFit fit_scaling(const std::vector<double>& ells, const std::vector<double>& counts, int discard) {
  if (ells.size() != counts.size()) throw ArgumentError("fit_scaling: size mismatch");
  if (discard < 0) throw ArgumentError("fit_scaling: discard must be >= 0");
  ScalingFit fit;
  fit.ells = ells;
  fit.counts = counts;
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = static_cast<std::size_t>(discard); i < ells.size(); ++i) {
    if (!(counts[i] > 0.0) || !(ells[i] > 0.0)) throw NumericError("fit_scaling: counts and scales must be positive");
    x.push_back(-std::log(ells[i]));
    y.push_back(std::log(counts[i]));
  }
  if (x.size() < 2) throw NumericError("fit_scaling: fewer than 2 scales after discarding");
  const double m = static_cast<double>(x.size());
  const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - xbar) * (x[i] - xbar);
    sxy += (x[i] - xbar) * (y[i] - ybar);
  }
  fit.slope = sxy / sxx;
  if (x.size() > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - ybar - fit.slope * (x[i] - xbar);
      ssr += r * r;
    }
    fit.slope_stderr = std::sqrt(ssr / (m - 2.0) / sxx);
  }
  return fit;
}

std::vector<double> dyadic_ladder(double ell0, int levels) {
  if (!(ell0 > 0.0) || levels < 1) throw ArgumentError("dyadic_ladder needs ell0 > 0 and levels >= 1");
  std::vector<double> out;
  for (int j = 0; j < levels; ++j) out.push_back(std::ldexp(ell0, -j));
  return out;
}

}  // namespace sle

#include "sle/loewner.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sle/rng.hpp"

namespace sle {

std::string_view to_string(Domain d) {
  switch (d) {
    case Domain::upper_half_plane: return "upper-half-plane";
    case Domain::unit_disk: return "unit-disk";
    case Domain::small_disk: return "small-disk";
    case Domain::plane: return "plane";
  }
  return "?";
}

std::string_view to_string(Side s) {
  switch (s) {
    case Side::right: return "right";
    case Side::left: return "left";
    case Side::undecided: return "undecided";
  }
  return "?";
}

TimeGrid TimeGrid::uniform(std::size_t n_steps, double dt) {
  TimeGrid g;
  g.kind = Kind::uniform;
  g.n_steps = n_steps;
  g.dt = dt;
  return g;
}

TimeGrid TimeGrid::geometric(std::size_t n_steps, double t_first, double t_last) {
  TimeGrid g;
  g.kind = Kind::geometric;
  g.n_steps = n_steps;
  g.t_first = t_first;
  g.t_last = t_last;
  return g;
}

std::vector<double> TimeGrid::times() const {
  if (n_steps < 1) throw ArgumentError("grid needs at least one step");
  std::vector<double> t(n_steps + 1);
  t[0] = 0.0;
  if (kind == Kind::uniform) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ArgumentError("dt must be positive");
    for (std::size_t k = 1; k <= n_steps; ++k) t[k] = static_cast<double>(k) * dt;
    return t;
  }
  if (!(t_first > 0.0) || !(t_last >= t_first) || !std::isfinite(t_last)) {
    throw ArgumentError("geometric grid needs 0 < t_first <= t_last");
  }
  if (n_steps == 1) {
    t[1] = t_first;
    return t;
  }
  if (t_last == t_first) throw ArgumentError("geometric grid with several steps needs t_last > t_first");
  const double log_first = std::log(t_first);
  const double log_ratio = (std::log(t_last) - log_first) / static_cast<double>(n_steps - 1);
  for (std::size_t k = 1; k <= n_steps; ++k) {
    t[k] = std::exp(log_first + log_ratio * static_cast<double>(k - 1));
  }
  t[n_steps] = t_last;
  return t;
}

DrivingFunction DrivingFunction::from_values(std::vector<double> times, std::vector<double> values,
                                             std::uint64_t seed) {
  if (times.size() != values.size() || times.size() < 2) {
    throw ArgumentError("driving function needs matching times/values of length >= 2");
  }
  if (times[0] != 0.0 || values[0] != 0.0) throw ArgumentError("driving function must start at (0, 0)");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw ArgumentError("driving times must increase strictly");
  }
  DrivingFunction d;
  d.dt = times[1] - times[0];
  d.times = std::move(times);
  d.values = std::move(values);
  d.seed = seed;
  return d;
}

DrivingFunction sample_driving(const KappaParams& params, std::size_t n_steps, double dt,
                               std::uint64_t seed) {
  return sample_driving(params, TimeGrid::uniform(n_steps, dt), seed);
}

DrivingFunction sample_driving(const KappaParams& /*params*/, const TimeGrid& grid, std::uint64_t seed) {
  std::vector<double> times = grid.times();
  std::vector<double> values(times.size(), 0.0);
  Engine engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t k = 1; k < times.size(); ++k) {
    values[k] = values[k - 1] + std::sqrt(times[k] - times[k - 1]) * normal(engine);
  }
  DrivingFunction d;
  d.dt = times[1];
  d.times = std::move(times);
  d.values = std::move(values);
  d.seed = seed;
  return d;
}

DrivingFunction zero_driving(const TimeGrid& grid) {
  std::vector<double> times = grid.times();
  std::vector<double> values(times.size(), 0.0);
  return DrivingFunction::from_values(std::move(times), std::move(values));
}

DrivingFunction coarsen(const DrivingFunction& driving, std::size_t stride) {
  const std::size_t n = driving.n_steps();
  if (stride < 1 || n % stride != 0) {
    throw ArgumentError("coarsen: stride " + std::to_string(stride) + " does not divide " + std::to_string(n) + " steps");
  }
  std::vector<double> times;
  std::vector<double> values;
  for (std::size_t k = 0; k <= n; k += stride) {
    times.push_back(driving.times[k]);
    values.push_back(driving.values[k]);
  }
  return DrivingFunction::from_values(std::move(times), std::move(values), driving.seed);
}

namespace {

bool in_domain(Complex z, Domain d) {
  constexpr double tol = 1e-9;
  switch (d) {
    case Domain::upper_half_plane: return z.imag() >= -tol;
    case Domain::unit_disk: return std::abs(z) <= 1.0 + tol;
    case Domain::small_disk: return std::abs(z - 0.5) <= 0.5 + tol;
    case Domain::plane: return true;
  }
  return false;
}

}  // namespace

PlanarPath::PlanarPath(std::vector<double> times, std::vector<Complex> points, Domain domain)
    : times_(std::move(times)), points_(std::move(points)), domain_(domain) {
  if (times_.size() != points_.size()) throw ArgumentError("path times and points differ in length");
  if (times_.size() < 2) throw ArgumentError("path needs at least 2 vertices");
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (k > 0 && !(times_[k] > times_[k - 1])) throw ArgumentError("path times must increase strictly");
    if (!std::isfinite(points_[k].real()) || !std::isfinite(points_[k].imag())) {
      throw ArgumentError("path vertex " + std::to_string(k) + " is not finite");
    }
    if (!in_domain(points_[k], domain_)) {
      throw ArgumentError("path vertex " + std::to_string(k) + " lies outside " +
                          std::string(to_string(domain_)));
    }
  }
}

Complex PlanarPath::at(double t) const {
  if (t <= times_.front()) return points_.front();
  if (t >= times_.back()) return points_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - times_.begin());
  const double s = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
  return points_[k - 1] + s * (points_[k] - points_[k - 1]);
}

namespace {

// Scratch arrays for apply_inverse_map, sized once per trace.
struct MapScratch {
  explicit MapScratch(Eigen::Index n) : zr(n), zi(n), root(n), ratio(n) {}
  Eigen::ArrayXd zr, zi, root, ratio;
};

// Applies f(w) = -u + sqrt((w + u)^2 - c) in place to every (re, im) pair, with the same branch
// as upper_sqrt. Array expressions so the loop vectorizes.
void apply_inverse_map(Eigen::Ref<Eigen::ArrayXd> re, Eigen::Ref<Eigen::ArrayXd> im, double u, double c,
                       MapScratch& s) {
  const Eigen::Index m = re.size();
  auto zr = s.zr.head(m);
  auto zi = s.zi.head(m);
  auto root = s.root.head(m);
  auto ratio = s.ratio.head(m);
  zr = (re + u).square() - im.square() - c;
  zi = 2.0 * (re + u) * im;
  // Principal root modulus part: sqrt((|z| + |Re z|) / 2).
  root = (0.5 * ((zr.square() + zi.square()).sqrt() + zr.abs())).sqrt();
  ratio = (root > 0.0).select(zi / (2.0 * root), 0.0);
  // Re z >= 0: root (t, zi/2t), flipped when zi < 0 -> (sign(zi) t, |zi|/2t).
  // Re z <  0: root (|zi|/2t, sign(zi) t), flipped when zi < 0 -> (zi/2t, t).
  re = (zr >= 0.0).select((zi < 0.0).select(-root, root), ratio) - u;
  im = (zr >= 0.0).select(ratio.abs(), root);
}

}  // namespace

PlanarPath compute_trace(const DrivingFunction& driving, const KappaParams& params) {
  const std::size_t n = driving.n_steps();
  if (driving.values.size() < 2) throw ArgumentError("driving function is empty");
  const Eigen::Index size = static_cast<Eigen::Index>(n + 1);
  Eigen::ArrayXd re(size), im(size);
  MapScratch scratch(size);
  re(0) = 0.0;
  im(0) = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    // f_k(-u_k) is the tip of the k-th slit.
    re(static_cast<Eigen::Index>(k)) = -driving.values[k];
    im(static_cast<Eigen::Index>(k)) = std::sqrt(2.0 * params.a * driving.step(k));
  }
  for (std::size_t j = n - 1; j >= 1; --j) {
    const Eigen::Index first = static_cast<Eigen::Index>(j + 1);
    apply_inverse_map(re.segment(first, size - first), im.segment(first, size - first),
                      driving.values[j], 2.0 * params.a * driving.step(j), scratch);
  }
  std::vector<Complex> points(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const Eigen::Index i = static_cast<Eigen::Index>(k);
    if (!std::isfinite(re(i)) || !std::isfinite(im(i))) {
      throw NumericError("trace evaluation overflowed at step " + std::to_string(k));
    }
    points[k] = Complex(re(i), std::max(im(i), 0.0));
  }
  return PlanarPath(driving.times, std::move(points), Domain::upper_half_plane);
}

Complex trace_point(const DrivingFunction& driving, const KappaParams& params, std::size_t k) {
  if (k > driving.n_steps()) throw ArgumentError("trace_point: step index out of range");
  if (k == 0) return Complex(0.0, 0.0);
  Complex w(-driving.values[k], std::sqrt(2.0 * params.a * driving.step(k)));
  for (std::size_t j = k - 1; j >= 1; --j) {
    w = elementary_inverse_map(w, driving.values[j], driving.step(j), params.a);
  }
  return w;
}

Complex forward_flow(const DrivingFunction& driving, const KappaParams& params, Complex z,
                     std::size_t k) {
  if (k > driving.n_steps()) throw ArgumentError("forward_flow: step index out of range");
  for (std::size_t j = 1; j <= k; ++j) {
    z = elementary_forward_map(z, driving.values[j], driving.step(j), params.a);
  }
  return z;
}

PlanarPath to_unit_disk(const PlanarPath& path) {
  if (path.domain() != Domain::upper_half_plane) throw ArgumentError("to_unit_disk expects an upper-half-plane path");
  std::vector<Complex> pts(path.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Complex z = path.points()[k];
    if (z == Complex(0.0, -1.0)) throw NumericError("to_unit_disk: pole at -i");
    pts[k] = unit_disk_map(z);
  }
  return PlanarPath(path.times(), std::move(pts), Domain::unit_disk);
}

PlanarPath to_small_disk(const PlanarPath& path) {
  if (path.domain() != Domain::upper_half_plane) throw ArgumentError("to_small_disk expects an upper-half-plane path");
  std::vector<Complex> pts(path.size());
  for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = small_disk_map(path.points()[k]);
  return PlanarPath(path.times(), std::move(pts), Domain::small_disk);
}

Side left_passage_side(const DrivingFunction& driving, const KappaParams& params, Complex z,
                       double threshold) {
  if (!(z.imag() > 0.0)) throw ArgumentError("left_passage_side needs Im z > 0");
  for (std::size_t j = 1; j <= driving.n_steps(); ++j) {
    const double u = driving.values[j];
    z = elementary_forward_map(z, u, driving.step(j), params.a);
    const Complex centered = z + u;
    if (std::abs(centered.real()) > threshold * centered.imag()) {
      return centered.real() > 0.0 ? Side::right : Side::left;
    }
  }
  return Side::undecided;
}

ClosedPath close_at_endpoint(const PlanarPath& disk_path, double delta) {
  if (!(delta > 0.0)) throw ArgumentError("closure delta must be positive");
  Complex endpoint;
  switch (disk_path.domain()) {
    case Domain::small_disk: endpoint = Complex(1.0, 0.0); break;
    case Domain::unit_disk: endpoint = Complex(-1.0, 0.0); break;
    default: throw ArgumentError("close_at_endpoint expects a disk path");
  }
  const auto& pts = disk_path.points();
  const auto& ts = disk_path.times();
  std::size_t keep = pts.size();
  bool reached = false;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (std::abs(pts[k] - endpoint) < delta) {
      keep = k + 1;
      reached = true;
      break;
    }
  }
  std::vector<double> times(ts.begin(), ts.begin() + static_cast<std::ptrdiff_t>(keep));
  std::vector<Complex> points(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(keep));
  const double closure = std::abs(points.back() - endpoint);
  const double last_step = keep >= 2 ? times[keep - 1] - times[keep - 2] : 1.0;
  if (closure > 0.0) {
    times.push_back(times.back() + last_step);
    points.push_back(endpoint);
  } else {
    points.back() = endpoint;
  }
  ClosedPath out{PlanarPath(std::move(times), std::move(points), disk_path.domain()), closure, keep, reached};
  return out;
}

}  // namespace sle

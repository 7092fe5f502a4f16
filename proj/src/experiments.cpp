#include "sle/experiments.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "sle/formulas.hpp"
#include "sle/rng.hpp"

namespace sle {

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mutex;
  std::exception_ptr error;
  std::size_t error_index = n;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || stop.load()) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        stop.store(true);
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

namespace {

constexpr std::size_t kKeptMessages = 5;

// Per-path outcome slot; failures keep their message.
struct Outcome {
  bool ok = false;
  std::string message;
};

PathTally tally(const std::vector<Outcome>& outcomes, const ExperimentConfig& config) {
  PathTally t;
  t.requested = outcomes.size();
  t.seed_rule = std::string(kSeedRuleVersion);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].ok) {
      ++t.used;
    } else {
      ++t.failed;
      if (t.failure_messages.size() < kKeptMessages) {
        t.failure_messages.push_back("path " + std::to_string(i) + ": " + outcomes[i].message);
      }
    }
  }
  if (static_cast<double>(t.failed) > config.max_failure_fraction * static_cast<double>(t.requested) ||
      t.used == 0) {
    throw NumericError(std::to_string(t.failed) + " of " + std::to_string(t.requested) +
                       " paths failed; first: " + (t.failure_messages.empty() ? "" : t.failure_messages.front()));
  }
  return t;
}

// Mean and standard error of the mean over the rows flagged ok.
void mean_and_error(const std::vector<Eigen::VectorXd>& rows, const std::vector<Outcome>& outcomes,
                    Eigen::VectorXd& mean, Eigen::VectorXd& err) {
  const Eigen::Index m = rows.front().size();
  mean = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(m);
  double n = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!outcomes[i].ok) continue;
    mean += rows[i];
    n += 1.0;
  }
  mean /= n;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!outcomes[i].ok) continue;
    sq += (rows[i] - mean).array().square().matrix();
  }
  err = n > 1.0 ? Eigen::VectorXd((sq / (n - 1.0) / n).array().sqrt()) : Eigen::VectorXd::Zero(m);
}

TensorSeries series_from(const Eigen::VectorXd& v, int level) {
  TensorSeries s(level);
  s.coeffs() = v;
  return s;
}

}  // namespace

PlanarPath run_trace(const ExperimentConfig& config) {
  config.validate();
  const KappaParams params = KappaParams::from_kappa(config.kappa);
  const DrivingFunction driving = sample_driving(params, config.time_grid(), config.seed);
  PlanarPath path = compute_trace(driving, params);
  switch (config.domain) {
    case Domain::unit_disk: return to_unit_disk(path);
    case Domain::small_disk: return to_small_disk(path);
    default: return path;
  }
}

SignatureMcReport run_signature_mc(const ExperimentConfig& config) {
  config.validate();
  const KappaParams params = KappaParams::from_kappa(config.kappa);
  const TimeGrid grid = config.time_grid();
  const int level = config.level;
  const std::size_t n = config.n_paths;
  const double w = std::sqrt(static_cast<double>(config.coarse_stride));

  std::vector<Outcome> outcomes(n);
  std::vector<Eigen::VectorXd> estimate(n);
  std::vector<Eigen::VectorXd> shift(n);
  std::vector<Eigen::VectorXd> raw(n);
  std::vector<double> closure_length(n, 0.0);
  std::vector<char> reached(n, 0);

  // Signatures after closing at delta and at delta / 2.
  auto closed_signatures = [&](const DrivingFunction& d, double& length, bool& hit) {
    const PlanarPath disk = to_small_disk(compute_trace(d, params));
    const ClosedPath full = close_at_endpoint(disk, config.closure_delta);
    const ClosedPath half = close_at_endpoint(disk, 0.5 * config.closure_delta);
    length = full.closure_length;
    hit = full.reached;
    return std::pair{signature_of_polyline(full.path, level).coeffs(), signature_of_polyline(half.path, level).coeffs()};
  };

  parallel_for(n, config.threads, [&](std::size_t i) {
    try {
      const DrivingFunction fine = sample_driving(params, grid, path_seed(config.seed, i));
      double length = 0.0;
      bool hit = false;
      auto [f_full, f_half] = closed_signatures(fine, length, hit);
      raw[i] = f_full;
      if (config.extrapolate) {
        double coarse_length = 0.0;
        bool coarse_hit = false;
        auto [c_full, c_half] = closed_signatures(coarsen(fine, config.coarse_stride), coarse_length, coarse_hit);
        estimate[i] = (w * f_full - c_full) / (w - 1.0);
        shift[i] = (w * f_half - c_half) / (w - 1.0) - estimate[i];
      } else {
        estimate[i] = f_full;
        shift[i] = f_half - f_full;
      }
      closure_length[i] = length;
      reached[i] = hit ? 1 : 0;
      outcomes[i].ok = true;
    } catch (const NumericError& e) {
      outcomes[i].message = e.what();
    }
  });

  SignatureMcReport report;
  report.paths = tally(outcomes, config);
  report.level = level;
  report.extrapolated = config.extrapolate;
  report.coarse_stride = config.coarse_stride;
  report.closure_delta = config.closure_delta;
  Eigen::VectorXd m;
  Eigen::VectorXd e;
  mean_and_error(estimate, outcomes, m, e);
  report.mean = series_from(m, level);
  report.std_error = series_from(e, level);
  mean_and_error(raw, outcomes, m, e);
  report.raw_mean = series_from(m, level);
  report.raw_std_error = series_from(e, level);
  mean_and_error(shift, outcomes, m, e);
  report.closure_shift = series_from(m, level);
  report.closure_shift_error = series_from(e, level);
  double total_length = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!outcomes[i].ok) continue;
    total_length += closure_length[i];
    report.reached += static_cast<std::size_t>(reached[i]);
  }
  report.mean_closure_length = total_length / static_cast<double>(report.paths.used);
  report.a_kappa = expected_signature_level3(params, config.quadrature).a_kappa;
  return report;
}

LeftPassageReport run_left_passage(const ExperimentConfig& config) {
  config.validate();
  const KappaParams params = KappaParams::from_kappa(config.kappa);
  const TimeGrid grid = config.time_grid();
  std::vector<Complex> points;
  LeftPassageReport report;
  for (double r : config.radii) {
    for (double theta : config.thetas) {
      points.push_back(std::polar(r, theta));
      PassagePoint p;
      p.r = r;
      p.theta = theta;
      p.predicted = 1.0 - phi(theta, params, config.quadrature);
      report.points.push_back(p);
    }
  }
  const std::size_t n = config.n_paths;
  std::vector<Outcome> outcomes(n);
  std::vector<std::vector<Side>> sides(n);
  parallel_for(n, config.threads, [&](std::size_t i) {
    const DrivingFunction d = sample_driving(params, grid, path_seed(config.seed, i));
    sides[i].reserve(points.size());
    for (Complex z : points) sides[i].push_back(left_passage_side(d, params, z, config.side_threshold));
    outcomes[i].ok = true;
  });
  report.paths = tally(outcomes, config);
  for (std::size_t j = 0; j < points.size(); ++j) {
    auto& p = report.points[j];
    for (std::size_t i = 0; i < n; ++i) {
      switch (sides[i][j]) {
        case Side::right: ++p.right; break;
        case Side::left: ++p.left; break;
        case Side::undecided: ++p.undecided; break;
      }
    }
    const std::size_t decided = p.right + p.left;
    if (decided == 0) throw NumericError("left-passage: every path undecided; raise t_last or n_steps");
    const ProportionEstimate est = wilson_estimate(p.right, decided);
    p.frequency = est.estimate;
    p.half_width = est.half_width;
    p.std_error = std::sqrt(p.frequency * (1.0 - p.frequency) / static_cast<double>(decided));
  }
  return report;
}

CrossingReport run_crossings(const ExperimentConfig& config) {
  config.validate();
  const KappaParams params = KappaParams::from_kappa(config.kappa);
  const TimeGrid grid = config.time_grid();
  std::vector<Annulus> annuli;
  for (double q : config.ratios) {
    Annulus a{config.center, q * config.outer_radius, config.outer_radius};
    a.validate();
    annuli.push_back(a);
  }
  const std::size_t n = config.n_paths;
  std::vector<Outcome> outcomes(n);
  std::vector<std::vector<std::size_t>> counts(n);
  parallel_for(n, config.threads, [&](std::size_t i) {
    try {
      const DrivingFunction d = sample_driving(params, grid, path_seed(config.seed, i));
      const PlanarPath path = to_unit_disk(compute_trace(d, params));
      for (const Annulus& a : annuli) counts[i].push_back(crossing_times(path, a).count());
      outcomes[i].ok = true;
    } catch (const NumericError& e) {
      outcomes[i].message = e.what();
    }
  });

  CrossingReport report;
  report.paths = tally(outcomes, config);
  for (std::size_t a = 0; a < annuli.size(); ++a) {
    for (int k : config.k_values) {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (outcomes[i].ok && counts[i][a] >= static_cast<std::size_t>(k)) ++hits;
      }
      CrossingRow row;
      row.annulus = annuli[a];
      row.ratio = config.ratios[a];
      row.k = k;
      row.estimate = wilson_estimate(hits, report.paths.used);
      row.std_error = std::sqrt(row.estimate.estimate * (1.0 - row.estimate.estimate) /
                                static_cast<double>(report.paths.used));
      report.rows.push_back(row);
    }
  }
  for (int k : config.k_values) {
    CrossingFit cf;
    cf.k = k;
    std::vector<DecayPoint> pts;
    for (const auto& row : report.rows) {
      if (row.k == k) pts.push_back({row.ratio, row.estimate.estimate, row.estimate.half_width, row.estimate.trials});
    }
    try {
      cf.fit = fit_decay(pts, k, params);
      cf.ok = true;
    } catch (const NumericError& e) {
      cf.error = e.what();
      cf.fit.bound_slope = decay_bound_slope(k, params);
    }
    report.fits.push_back(cf);
  }
  return report;
}

DimensionReport run_dimension(const ExperimentConfig& config) {
  config.validate();
  const KappaParams params = KappaParams::from_kappa(config.kappa);
  const TimeGrid grid = config.time_grid();
  const double t_end = grid.times().back();
  const double ell0 = config.ell0 > 0.0 ? config.ell0 : 0.5 * std::sqrt(2.0 * params.a * t_end);
  DimensionReport report;
  report.ells = dyadic_ladder(ell0, config.ladder_levels);
  report.target = params.dim;
  const std::size_t n = config.n_paths;
  const std::size_t m = report.ells.size();
  std::vector<Outcome> outcomes(n);
  std::vector<std::vector<double>> box(n);
  std::vector<std::vector<double>> tort(n);
  parallel_for(n, config.threads, [&](std::size_t i) {
    try {
      const DrivingFunction d = sample_driving(params, grid, path_seed(config.seed, i));
      const PlanarPath path = compute_trace(d, params);
      for (double ell : report.ells) {
        box[i].push_back(static_cast<double>(box_count(path, ell)));
        tort[i].push_back(static_cast<double>(tortuosity_segments(path, ell)));
      }
      outcomes[i].ok = true;
    } catch (const NumericError& e) {
      outcomes[i].message = e.what();
    }
  });
  report.paths = tally(outcomes, config);
  report.box_counts.assign(m, 0.0);
  report.tortuosity_counts.assign(m, 0.0);
  const double used = static_cast<double>(report.paths.used);
  for (std::size_t i = 0; i < n; ++i) {
    if (!outcomes[i].ok) continue;
    for (std::size_t j = 0; j < m; ++j) {
      report.box_counts[j] += box[i][j] / used;
      report.tortuosity_counts[j] += tort[i][j] / used;
    }
  }
  report.box_fit = fit_scaling(report.ells, report.box_counts, config.discard_levels);
  report.tortuosity_fit = fit_scaling(report.ells, report.tortuosity_counts, config.discard_levels);
  return report;
}

}  // namespace sle

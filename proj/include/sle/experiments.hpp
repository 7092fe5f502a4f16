#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "sle/config.hpp"
#include "sle/geometry.hpp"
#include "sle/loewner.hpp"
#include "sle/signature.hpp"

namespace sle {

/// Calls f(i) for every i in [0, n) on up to `threads` workers (0 = hardware concurrency).
/// Indices are handed out dynamically; an exception escaping f stops the remaining work and the
/// one from the lowest index is rethrown.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& f);

/// Path bookkeeping shared by the Monte Carlo reports. Paths that raise NumericError are skipped
/// and counted; a run aborts when the failed fraction exceeds the configured limit.
struct PathTally {
  std::size_t requested = 0;
  std::size_t used = 0;
  std::size_t failed = 0;
  std::string seed_rule;
  std::vector<std::string> failure_messages;   // first few, in path order
};

/// Single trace for `trace`: sampled driving, trace in H, optionally mapped to a disk.
PlanarPath run_trace(const ExperimentConfig& config);

/// Expected signature of the small-disk curve from 0 to 1.
///
/// Per path the trace is mapped to the small disk, truncated within closure_delta of 1 and
/// closed by a segment. The vertical-slit scheme has a weak error of order sqrt(dt / t), so with
/// `extrapolate` each path also runs on every coarse_stride-th grid time of the same Brownian
/// path and the estimator is the Richardson combination
///   (sqrt(s) S_fine - S_coarse) / (sqrt(s) - 1),   s = coarse_stride,
/// which removes the leading term. The raw fine-grid statistics are reported alongside.
struct SignatureMcReport {
  PathTally paths;
  int level = 3;
  bool extrapolated = true;
  std::size_t coarse_stride = 4;
  TensorSeries mean{3};
  TensorSeries std_error{3};
  TensorSeries raw_mean{3};
  TensorSeries raw_std_error{3};
  /// Mean change of the estimator when closure_delta is halved, with its standard error.
  TensorSeries closure_shift{3};
  TensorSeries closure_shift_error{3};
  double closure_delta = 0.01;
  double mean_closure_length = 0.0;
  std::size_t reached = 0;   // paths whose fine trace came within closure_delta of 1
  double a_kappa = 0.0;      // reference value for the level-3 words
};

SignatureMcReport run_signature_mc(const ExperimentConfig& config);

struct PassagePoint {
  double r = 0.0;
  double theta = 0.0;
  std::size_t right = 0;
  std::size_t left = 0;
  std::size_t undecided = 0;
  double frequency = 0.0;     // right / (right + left)
  double half_width = 0.0;    // Wilson 95%
  double std_error = 0.0;
  double predicted = 0.0;     // 1 - phi(theta)
};

/// Every driving path is shared by all points r e^{i theta}, r in radii, theta in thetas.
struct LeftPassageReport {
  PathTally paths;
  std::vector<PassagePoint> points;
};

LeftPassageReport run_left_passage(const ExperimentConfig& config);

struct CrossingRow {
  Annulus annulus;
  double ratio = 0.0;
  int k = 0;
  ProportionEstimate estimate;
  double std_error = 0.0;
};

struct CrossingFit {
  int k = 0;
  bool ok = false;
  DecayFit fit;
  std::string error;
};

/// Unit-disk traces from 1 to -1; one set of paths serves every (ratio, k) pair.
struct CrossingReport {
  PathTally paths;
  std::vector<CrossingRow> rows;   // ratio-major, then k
  std::vector<CrossingFit> fits;   // one per k
};

CrossingReport run_crossings(const ExperimentConfig& config);

/// Box counts and tortuosity counts averaged over paths on a dyadic ladder, with log-log fits.
struct DimensionReport {
  PathTally paths;
  std::vector<double> ells;
  std::vector<double> box_counts;
  std::vector<double> tortuosity_counts;
  ScalingFit box_fit;
  ScalingFit tortuosity_fit;
  double target = 0.0;   // 1 + kappa / 8
};

DimensionReport run_dimension(const ExperimentConfig& config);

}  // namespace sle

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "sle/formulas.hpp"
#include "sle/loewner.hpp"

namespace sle {

enum class Command { trace, akappa_table, signature_mc, left_passage, crossings, dimension };

std::string_view to_string(Command c);
/// Throws ArgumentError on an unknown name.
Command command_from_string(std::string_view name);

/// Everything a run needs. `defaults_for` fills the command's defaults; JSON and flags override
/// single fields; the resolved config serializes back to JSON and reproduces the run.
struct ExperimentConfig {
  Command command = Command::trace;
  double kappa = 2.0;
  std::size_t n_paths = 1;
  std::uint64_t seed = 1;
  std::size_t threads = 0;   // 0 = hardware concurrency
  std::string output_path;

  // Capacity-time grid.
  TimeGrid::Kind grid = TimeGrid::Kind::uniform;
  std::size_t n_steps = 1000;
  double dt = 1e-3;
  double t_first = 1e-5;
  double t_last = 1e5;

  // trace
  Domain domain = Domain::upper_half_plane;

  // akappa-table and reference values
  QuadratureSpec quadrature;

  // signature-mc
  double closure_delta = 0.01;
  int level = 3;
  bool extrapolate = true;
  std::size_t coarse_stride = 4;

  // left-passage: points r e^{i theta}
  std::vector<double> radii{1.0};
  std::vector<double> thetas;
  double side_threshold = 100.0;

  // crossings
  Complex center{0.0, 0.0};
  double outer_radius = 0.6;
  std::vector<double> ratios{0.5, 0.25, 0.125};
  std::vector<int> k_values{4};

  // dimension: ladder ell0 * 2^{-j}; ell0 <= 0 picks half the capacity scale sqrt(2 a t_n)
  double ell0 = 0.0;
  int ladder_levels = 7;
  int discard_levels = 2;

  /// Abort when more than this fraction of paths fail numerically.
  double max_failure_fraction = 1e-3;

  static ExperimentConfig defaults_for(Command command);

  /// Throws ArgumentError naming the first offending field.
  void validate() const;

  TimeGrid time_grid() const;

  /// With include_runtime false, output_path and threads are left out: the remaining fields fix
  /// the results, so this form is what output files embed.
  nlohmann::json to_json(bool include_runtime = true) const;
  /// Starts from defaults_for(json["command"]) and overrides the fields present. Unknown keys
  /// are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
};

}  // namespace sle

#include "sle/config.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace sle {

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::trace, "trace"},
    {Command::akappa_table, "akappa-table"},
    {Command::signature_mc, "signature-mc"},
    {Command::left_passage, "left-passage"},
    {Command::crossings, "crossings"},
    {Command::dimension, "dimension"},
};

std::string_view grid_name(TimeGrid::Kind k) { return k == TimeGrid::Kind::uniform ? "uniform" : "geometric"; }

TimeGrid::Kind grid_from_string(std::string_view s) {
  if (s == "uniform") return TimeGrid::Kind::uniform;
  if (s == "geometric") return TimeGrid::Kind::geometric;
  throw ArgumentError("grid must be \"uniform\" or \"geometric\", got \"" + std::string(s) + "\"");
}

Domain domain_from_string(std::string_view s) {
  for (Domain d : {Domain::upper_half_plane, Domain::unit_disk, Domain::small_disk}) {
    if (to_string(d) == s) return d;
  }
  throw ArgumentError("unknown domain \"" + std::string(s) + "\"");
}

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ArgumentError(std::string(field) + ": " + what);
}

template <class T>
T get(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("config field \"") + key + "\": " + e.what());
  }
}

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "unknown";
}

Command command_from_string(std::string_view name) {
  for (const auto& [cmd, n] : kCommands) {
    if (n == name) return cmd;
  }
  throw ArgumentError("unknown command \"" + std::string(name) + "\"");
}

ExperimentConfig ExperimentConfig::defaults_for(Command command) {
  constexpr double pi = std::numbers::pi;
  ExperimentConfig c;
  c.command = command;
  switch (command) {
    case Command::trace:
      c.n_paths = 1;
      c.seed = 7;
      break;
    case Command::akappa_table:
      c.n_paths = 1;
      break;
    case Command::signature_mc:
      c.n_paths = 100000;
      c.grid = TimeGrid::Kind::geometric;
      c.n_steps = 2000;
      c.t_first = 1e-5;
      c.t_last = 1e5;
      break;
    case Command::left_passage:
      c.kappa = 8.0 / 3.0;
      c.n_paths = 4000;
      c.grid = TimeGrid::Kind::geometric;
      c.n_steps = 60000;
      c.t_first = 1e-3;
      c.t_last = 1e4;
      c.thetas = {pi / 3.0, pi / 2.0, 2.0 * pi / 3.0};
      break;
    case Command::crossings:
      c.n_paths = 20000;
      c.grid = TimeGrid::Kind::geometric;
      c.n_steps = 2000;
      c.t_first = 1e-3;
      c.t_last = 1e3;
      break;
    case Command::dimension:
      c.kappa = 8.0 / 3.0;
      c.n_paths = 20;
      c.grid = TimeGrid::Kind::uniform;
      c.n_steps = 4000;
      c.dt = 1.0;
      break;
  }
  return c;
}

TimeGrid ExperimentConfig::time_grid() const {
  return grid == TimeGrid::Kind::uniform ? TimeGrid::uniform(n_steps, dt) : TimeGrid::geometric(n_steps, t_first, t_last);
}

void ExperimentConfig::validate() const {
  require(kappa > 0.0 && kappa <= 4.0, "kappa", "must lie in (0, 4]");
  require(n_paths >= 1, "n_paths", "must be >= 1");
  require(n_steps >= 1, "n_steps", "must be >= 1");
  if (grid == TimeGrid::Kind::uniform) {
    require(std::isfinite(dt) && dt > 0.0, "dt", "must be positive");
  } else {
    require(n_steps >= 2, "n_steps", "a geometric grid needs >= 2 steps");
    require(t_first > 0.0 && t_last > t_first && std::isfinite(t_last), "t_first/t_last", "need 0 < t_first < t_last");
  }
  quadrature.validate();
  require(closure_delta > 0.0 && closure_delta < 1.0, "closure_delta", "must lie in (0, 1)");
  require(level >= 1 && level <= 5, "level", "must lie in [1, 5]");
  require(coarse_stride >= 2, "coarse_stride", "must be >= 2");
  if (command == Command::signature_mc && extrapolate) {
    require(n_steps % coarse_stride == 0, "coarse_stride", "must divide n_steps");
  }
  require(side_threshold > 0.0, "side_threshold", "must be positive");
  for (double r : radii) require(r > 0.0 && std::isfinite(r), "radii", "must be positive");
  for (double t : thetas) require(t > 0.0 && t < std::numbers::pi, "thetas", "must lie in (0, pi)");
  if (command == Command::left_passage) require(!radii.empty() && !thetas.empty(), "radii/thetas", "must be nonempty");
  require(std::abs(center) <= 1.0, "center", "must lie in the closed unit disk");
  require(outer_radius > 0.0 && std::isfinite(outer_radius), "outer_radius", "must be positive");
  for (double q : ratios) require(q > 0.0 && q < 1.0, "ratios", "must lie in (0, 1)");
  for (int k : k_values) require(k >= 1, "k_values", "must be >= 1");
  if (command == Command::crossings) require(!ratios.empty() && !k_values.empty(), "ratios/k_values", "must be nonempty");
  require(std::isfinite(ell0), "ell0", "must be finite");
  require(ladder_levels >= 2, "ladder_levels", "must be >= 2");
  require(discard_levels >= 0 && ladder_levels - discard_levels >= 2, "discard_levels", "must leave >= 2 scales");
  require(max_failure_fraction >= 0.0 && max_failure_fraction < 1.0, "max_failure_fraction", "must lie in [0, 1)");
}

nlohmann::json ExperimentConfig::to_json(bool include_runtime) const {
  nlohmann::json j;
  j["command"] = std::string(to_string(command));
  j["kappa"] = kappa;
  j["n_paths"] = n_paths;
  j["seed"] = seed;
  if (include_runtime) {
    j["threads"] = threads;
    j["output_path"] = output_path;
  }
  j["grid"] = std::string(grid_name(grid));
  j["n_steps"] = n_steps;
  j["dt"] = dt;
  j["t_first"] = t_first;
  j["t_last"] = t_last;
  j["domain"] = std::string(to_string(domain));
  j["quadrature"] = {{"abs_tol", quadrature.abs_tol}, {"rel_tol", quadrature.rel_tol}, {"max_depth", quadrature.max_depth}};
  j["closure_delta"] = closure_delta;
  j["level"] = level;
  j["extrapolate"] = extrapolate;
  j["coarse_stride"] = coarse_stride;
  j["radii"] = radii;
  j["thetas"] = thetas;
  j["side_threshold"] = side_threshold;
  j["center"] = {center.real(), center.imag()};
  j["outer_radius"] = outer_radius;
  j["ratios"] = ratios;
  j["k_values"] = k_values;
  j["ell0"] = ell0;
  j["ladder_levels"] = ladder_levels;
  j["discard_levels"] = discard_levels;
  j["max_failure_fraction"] = max_failure_fraction;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ArgumentError("config must be a JSON object");
  if (!j.contains("command")) throw ArgumentError("config needs a \"command\" field");
  ExperimentConfig c = defaults_for(command_from_string(get<std::string>(j, "command")));
  static const std::set<std::string> known = {
      "command", "kappa", "n_paths", "seed", "threads", "output_path", "grid", "n_steps", "dt", "t_first",
      "t_last", "domain", "quadrature", "closure_delta", "level", "extrapolate", "coarse_stride", "radii",
      "thetas", "side_threshold", "center", "outer_radius", "ratios", "k_values", "ell0", "ladder_levels",
      "discard_levels", "max_failure_fraction"};
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) throw ArgumentError("unknown config field \"" + item.key() + "\"");
  }
  if (j.contains("kappa")) c.kappa = get<double>(j, "kappa");
  if (j.contains("n_paths")) c.n_paths = get<std::size_t>(j, "n_paths");
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("threads")) c.threads = get<std::size_t>(j, "threads");
  if (j.contains("output_path")) c.output_path = get<std::string>(j, "output_path");
  if (j.contains("grid")) c.grid = grid_from_string(get<std::string>(j, "grid"));
  if (j.contains("n_steps")) c.n_steps = get<std::size_t>(j, "n_steps");
  if (j.contains("dt")) c.dt = get<double>(j, "dt");
  if (j.contains("t_first")) c.t_first = get<double>(j, "t_first");
  if (j.contains("t_last")) c.t_last = get<double>(j, "t_last");
  if (j.contains("domain")) c.domain = domain_from_string(get<std::string>(j, "domain"));
  if (j.contains("quadrature")) {
    const auto& q = j.at("quadrature");
    if (q.contains("abs_tol")) c.quadrature.abs_tol = get<double>(q, "abs_tol");
    if (q.contains("rel_tol")) c.quadrature.rel_tol = get<double>(q, "rel_tol");
    if (q.contains("max_depth")) c.quadrature.max_depth = get<int>(q, "max_depth");
  }
  if (j.contains("closure_delta")) c.closure_delta = get<double>(j, "closure_delta");
  if (j.contains("level")) c.level = get<int>(j, "level");
  if (j.contains("extrapolate")) c.extrapolate = get<bool>(j, "extrapolate");
  if (j.contains("coarse_stride")) c.coarse_stride = get<std::size_t>(j, "coarse_stride");
  if (j.contains("radii")) c.radii = get<std::vector<double>>(j, "radii");
  if (j.contains("thetas")) c.thetas = get<std::vector<double>>(j, "thetas");
  if (j.contains("side_threshold")) c.side_threshold = get<double>(j, "side_threshold");
  if (j.contains("center")) {
    const auto v = get<std::vector<double>>(j, "center");
    if (v.size() != 2) throw ArgumentError("center must be [re, im]");
    c.center = Complex(v[0], v[1]);
  }
  if (j.contains("outer_radius")) c.outer_radius = get<double>(j, "outer_radius");
  if (j.contains("ratios")) c.ratios = get<std::vector<double>>(j, "ratios");
  if (j.contains("k_values")) c.k_values = get<std::vector<int>>(j, "k_values");
  if (j.contains("ell0")) c.ell0 = get<double>(j, "ell0");
  if (j.contains("ladder_levels")) c.ladder_levels = get<int>(j, "ladder_levels");
  if (j.contains("discard_levels")) c.discard_levels = get<int>(j, "discard_levels");
  if (j.contains("max_failure_fraction")) c.max_failure_fraction = get<double>(j, "max_failure_fraction");
  c.validate();
  return c;
}

}  // namespace sle

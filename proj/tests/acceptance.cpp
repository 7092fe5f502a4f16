// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sle/experiments.hpp"
#include "sle/formulas.hpp"
#include "sle/io.hpp"
#include "sle/roughpath.hpp"
#include "sle/rng.hpp"
#include "sle/runner.hpp"

using namespace sle;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.ok) ++failures;
  std::printf("%s  %-28s %s [%.1f s]\n", out.ok ? "PASS" : "FAIL", name.c_str(), out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome akappa_table() {
  // Printed values; the kappa = 8/5 entry carries only 7 significant digits.
  const double listed[] = {0.02083333, 0.01032903, 0.00662013, 0.00481400, 0.00376479, 0.00308468, 0.00260995};
  const auto t = std::chrono::steady_clock::now();
  const auto rows = a_kappa_table();
  const double secs = seconds_since(t);
  double worst = 0.0, worst_listed = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    worst = std::max(worst, rows[i].abs_diff);
    worst_listed = std::max(worst_listed, std::abs(rows[i].quadrature - listed[i]));
  }
  const bool ok = rows.size() == 7 && worst <= 1e-8 && worst_listed <= 5e-8 && secs < 1.0;
  return {ok, "max |quadrature - closed form| = " + g(worst) + ", max |quadrature - printed| = " + g(worst_listed) +
                  ", " + g(secs) + " s"};
}

Outcome route_equivalence() {
  const auto t = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double kappa : {1.0, 2.0, 8.0 / 3.0, 4.0}) {
    const auto p = KappaParams::from_kappa(kappa);
    worst = std::max(worst, std::abs(a_kappa_double_integral(p) - a_kappa_quadrature(p)));
  }
  const double secs = seconds_since(t);
  return {worst <= 1e-4 && secs < 120.0, "max |double integral - single integral| = " + g(worst) + ", " + g(secs) + " s"};
}

Outcome radial_identities() {
  const auto t = std::chrono::steady_clock::now();
  double worst_h = 0.0, worst_tail = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double theta = (pi / 2) * i / 21.0;
    worst_h = std::max(worst_h, std::abs(radial_integral(theta) - radial_integral_quadrature(theta)));
  }
  for (int i = 0; i < 20; ++i) {
    const double s = 0.05 + (pi / 2 - 0.05) * i / 20.0;
    const double integral = oracle::simpson([](double v) { return reflected_radial_integral(v); }, s, pi / 2, 2000);
    worst_tail = std::max(worst_tail, std::abs(reflected_radial_tail(s) - integral));
  }
  const double secs = seconds_since(t);
  return {worst_h <= 1e-8 && worst_tail <= 1e-8 && secs < 1.0,
          "H max err " + g(worst_h) + ", antiderivative max err " + g(worst_tail) + ", " + g(secs) + " s"};
}

std::vector<Word> words_up_to(int level) {
  std::vector<Word> out;
  for (int n = 0; n <= level; ++n) {
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) out.push_back(Word::from_index(n, i));
  }
  return out;
}

Outcome per_path_identities() {
  const auto words = words_up_to(3);
  double worst_word = 0.0, worst_shuffle = 0.0;
  const double kappas[] = {1.0, 2.0, 8.0 / 3.0, 4.0};
  for (int i = 0; i < 100; ++i) {
    const auto p = KappaParams::from_kappa(kappas[i % 4]);
    const auto d = sample_driving(p, TimeGrid::geometric(2000, 1e-5, 1e5), path_seed(20240601, i));
    const auto closed = close_at_endpoint(to_small_disk(compute_trace(d, p)), 0.01);
    const auto sig = signature_of_polyline(closed.path, 3);
    const std::pair<const char*, double> expect[] = {{"1", 1.0},      {"2", 0.0},  {"11", 0.5},
                                                     {"22", 0.0},     {"111", 1.0 / 6.0}, {"222", 0.0}};
    for (const auto& [w, v] : expect) worst_word = std::max(worst_word, std::abs(sig[Word(w)] - v));
    for (const auto& u : words) {
      for (const auto& v : words) {
        if (u.size() + v.size() > 3) continue;
        double rhs = 0.0;
        for (const auto& [w, m] : shuffle_product(u, v)) rhs += double(m) * sig[w];
        worst_shuffle = std::max(worst_shuffle, std::abs(sig[u] * sig[v] - rhs));
      }
    }
  }
  return {worst_word <= 1e-9 && worst_shuffle <= 1e-9,
          "100 paths: max word error " + g(worst_word) + ", max shuffle defect " + g(worst_shuffle)};
}

Outcome chen_vs_quadrature() {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> n(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    std::vector<Complex> z{Complex(0, 0)};
    for (int k = 1; k < 10; ++k) z.push_back(z.back() + Complex(n(rng), n(rng)));
    const auto sig = signature_of_points(z, 3);
    for (const auto& [w, v] : oracle::nested_signature(z, 1024)) worst = std::max(worst, std::abs(sig[Word(w)] - v));
  }
  return {worst <= 1e-10, "50 polylines: max |Chen - nested quadrature| = " + g(worst)};
}

// Simple polylines from 0 to 1 in the small disk: x-monotone random ones and closed simulated traces.
Outcome green_identity() {
  std::mt19937_64 rng(5);
  std::vector<std::vector<Complex>> curves;
  while (curves.size() < 25) curves.push_back(oracle::monotone_disk_polyline(rng, 5 + int(curves.size())));
  const auto p = KappaParams::from_kappa(2.0);
  for (std::uint64_t seed = 1; curves.size() < 50; ++seed) {
    const auto d = sample_driving(p, TimeGrid::geometric(600, 1e-5, 1e5), path_seed(99, seed));
    auto z = close_at_endpoint(to_small_disk(compute_trace(d, p)), 0.01).path.points();
    if (oracle::polyline_is_simple(z)) curves.push_back(std::move(z));
  }
  double worst = 0.0;
  for (const auto& z : curves) {
    if (!oracle::polyline_is_simple(z)) return {false, "generated polyline is not simple"};
    std::vector<double> t(z.size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = double(k);
    const PlanarPath path(t, z, Domain::small_disk);
    // Region between the curve and the upper arc: half-disk moment 1/12 minus the part below the curve.
    const double region_moment = 1.0 / 12.0 + oracle::polygon_y_moment(z);
    const double rhs = 1.0 / 12.0 - region_moment;
    const double via_young =
        0.5 * young_integral([&](double s) { return std::norm(path.at(s).imag()); }, path, Coordinate::real, 3)
                  .extrapolated;
    const double via_signature = signature_of_polyline(path, 3)[Word("221")];
    worst = std::max({worst, std::abs(via_young - rhs), std::abs(via_signature - rhs)});
  }
  return {worst <= 1e-8, "50 polylines: max |1/2 int y^2 dx - (1/12 - moment)| = " + g(worst)};
}

Outcome signature_mc() {
  auto config = ExperimentConfig::defaults_for(Command::signature_mc);
  config.kappa = 2.0;
  const auto r = run_signature_mc(config);
  std::string detail = "n=" + std::to_string(r.paths.used) + ", steps=" + std::to_string(config.n_steps);
  bool ok = r.paths.used >= 99900 && config.n_steps == 2000;
  const double a = r.a_kappa;
  const std::pair<const char*, double> targets[] = {{"221", a}, {"122", a}, {"212", -2.0 * a}};
  for (const auto& [w, target] : targets) {
    const Word word(w);
    const double z = (r.mean[word] - target) / r.std_error[word];
    const double shift = r.closure_shift[word] / r.std_error[word];
    ok = ok && std::abs(z) <= 3.0 && std::abs(shift) < 1.0;
    detail += std::string("; ") + w + ": " + g(r.mean[word]) + " +- " + g(r.std_error[word]) + " (z " + g(z) +
              ", half-delta shift " + g(shift) + " sigma)";
  }
  return {ok, detail};
}

Outcome left_passage() {
  const auto config = ExperimentConfig::defaults_for(Command::left_passage);
  const auto r = run_left_passage(config);
  const double expect[] = {0.75, 0.5, 0.25};
  bool ok = r.points.size() == 3 && r.paths.used >= 4000 - 4;
  std::string detail = "n=" + std::to_string(r.paths.used);
  for (std::size_t i = 0; i < r.points.size() && i < 3; ++i) {
    const auto& pt = r.points[i];
    ok = ok && std::abs(pt.frequency - expect[i]) <= 0.021 && std::abs(pt.predicted - expect[i]) < 1e-12;
    detail += "; theta " + g(pt.theta) + ": " + g(pt.frequency) + " vs " + g(expect[i]) + " (undecided " +
              std::to_string(pt.undecided) + ")";
  }
  return {ok, detail};
}

Outcome crossing_decay() {
  auto config = ExperimentConfig::defaults_for(Command::crossings);
  config.kappa = 2.0;
  config.k_values = {4};
  config.ratios = {0.5, 0.25, 0.125};
  const auto r = run_crossings(config);
  bool ok = r.paths.used >= 20000 && r.rows.size() == 3 && r.fits.size() == 1 && r.fits[0].ok;
  std::string detail = "n=" + std::to_string(r.paths.used);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    detail += "; r/R " + g(r.rows[i].ratio) + ": " + g(r.rows[i].estimate.estimate);
    if (i > 0) ok = ok && r.rows[i].estimate.estimate < r.rows[i - 1].estimate.estimate;
  }
  if (!r.fits.empty() && r.fits[0].ok) {
    const auto& f = r.fits[0].fit;
    ok = ok && f.fitted_slope >= f.bound_slope - 2.0 * f.slope_stderr;
    detail += "; slope " + g(f.fitted_slope) + " +- " + g(f.slope_stderr) + " vs bound " + g(f.bound_slope);
  } else if (!r.fits.empty()) {
    detail += "; fit failed: " + r.fits[0].error;
  }
  return {ok, detail};
}

Outcome dimension() {
  const auto config = ExperimentConfig::defaults_for(Command::dimension);
  const auto r = run_dimension(config);
  const auto& e = r.box_fit.ells;
  const double span = e.empty() ? 0.0 : e.front() / e.back();
  const bool ok = r.paths.used == 20 && config.n_steps == 4000 && span >= 10.0 &&
                  std::abs(r.box_fit.slope - 4.0 / 3.0) <= 0.15 && std::abs(r.tortuosity_fit.slope - 4.0 / 3.0) <= 0.15;
  return {ok, "box slope " + g(r.box_fit.slope) + ", tortuosity slope " + g(r.tortuosity_fit.slope) +
                  " over ell ratio " + g(span) + " (target 4/3)"};
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "slesim-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<ExperimentConfig> configs;
  auto trace = ExperimentConfig::defaults_for(Command::trace);
  trace.kappa = 2.0;
  trace.n_steps = 1000;
  trace.seed = 7;
  configs.push_back(trace);
  configs.push_back(ExperimentConfig::defaults_for(Command::akappa_table));
  auto sig = ExperimentConfig::defaults_for(Command::signature_mc);
  sig.n_paths = 200;
  configs.push_back(sig);
  auto lp = ExperimentConfig::defaults_for(Command::left_passage);
  lp.n_paths = 100;
  configs.push_back(lp);
  auto cr = ExperimentConfig::defaults_for(Command::crossings);
  cr.n_paths = 200;
  configs.push_back(cr);
  auto dm = ExperimentConfig::defaults_for(Command::dimension);
  dm.n_paths = 4;
  configs.push_back(dm);
  int identical = 0;
  for (auto& c : configs) {
    const std::string name = default_output_name(c.command);
    c.output_path = (dir / ("1-" + name)).string();
    c.threads = 1;
    run(c);
    c.output_path = (dir / ("2-" + name)).string();
    c.threads = 0;
    run(c);
    const auto a = slurp(dir / ("1-" + name));
    if (!a.empty() && a == slurp(dir / ("2-" + name))) ++identical;
  }
  fs::remove_all(dir);
  return {identical == int(configs.size()),
          std::to_string(identical) + "/" + std::to_string(configs.size()) + " outputs bitwise identical across repeated runs"};
}

}  // namespace

int main() {
  criterion("A_kappa table", akappa_table);
  criterion("route equivalence", route_equivalence);
  criterion("radial sub-identities", radial_identities);
  criterion("per-path signature words", per_path_identities);
  criterion("Chen vs quadrature", chen_vs_quadrature);
  criterion("Green identity", green_identity);
  criterion("expected signature MC", signature_mc);
  criterion("left passage", left_passage);
  criterion("crossing decay", crossing_decay);
  criterion("dimension estimators", dimension);
  criterion("determinism", determinism);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

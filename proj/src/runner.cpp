#include "sle/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sle/experiments.hpp"
#include "sle/io.hpp"

namespace sle {

std::string default_output_name(Command command) {
  const std::string stem(to_string(command));
  return stem + (command == Command::signature_mc ? ".json" : ".csv");
}

std::string resolve_output_path(const ExperimentConfig& config) {
  if (!config.output_path.empty()) return config.output_path;
  const char* dir = std::getenv(kOutputDirEnv);
  const std::filesystem::path base = (dir && *dir) ? std::filesystem::path(dir) : std::filesystem::path(".");
  return (base / default_output_name(config.command)).string();
}

namespace {

// Writes through a temporary file so a failed run never leaves a truncated output behind. An
// unwritable destination is a configuration error.
void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  try {
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw ArgumentError("cannot open " + tmp.string() + " for writing");
      out << contents;
      if (!out.flush()) throw ArgumentError("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, target);
  } catch (const std::filesystem::filesystem_error& e) {
    throw ArgumentError(std::string("output path: ") + e.what());
  }
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

std::string run(const ExperimentConfig& config) {
  config.validate();
  const std::string path = resolve_output_path(config);
  std::ostringstream out;
  std::ostringstream summary;
  summary << to_string(config.command) << ": ";

  switch (config.command) {
    case Command::trace: {
      const PlanarPath p = run_trace(config);
      write_path_csv(out, p, config);
      const Complex tip = p.points().back();
      summary << p.size() << " vertices in " << to_string(p.domain()) << ", tip " << fmt(tip.real()) << (tip.imag() < 0 ? "" : "+")
              << fmt(tip.imag()) << "i";
      break;
    }
    case Command::akappa_table: {
      const auto rows = a_kappa_table(config.quadrature);
      write_akappa_csv(out, rows, config);
      double worst = 0.0;
      for (const auto& r : rows) worst = std::max(worst, r.abs_diff);
      summary << rows.size() << " rows, max |closed_form - quadrature| = " << fmt(worst);
      break;
    }
    case Command::signature_mc: {
      const SignatureMcReport r = run_signature_mc(config);
      out << signature_report_json(r, config).dump(2) << '\n';
      summary << "n=" << r.paths.used << " (failed " << r.paths.failed << "), word 221 mean " << fmt(r.mean[Word("221")])
              << " +- " << fmt(r.std_error[Word("221")]) << " vs a_kappa " << fmt(r.a_kappa);
      break;
    }
    case Command::left_passage: {
      const LeftPassageReport r = run_left_passage(config);
      write_left_passage_csv(out, r, config);
      double worst = 0.0;
      for (const auto& p : r.points) worst = std::max(worst, std::abs(p.frequency - p.predicted));
      summary << "n=" << r.paths.used << ", " << r.points.size() << " points, max |freq - (1 - phi)| = " << fmt(worst);
      break;
    }
    case Command::crossings: {
      const CrossingReport r = run_crossings(config);
      write_crossings_csv(out, r, config);
      summary << "n=" << r.paths.used << ", " << r.rows.size() << " rows";
      for (const auto& f : r.fits) {
        summary << "; k=" << f.k << ": ";
        if (f.ok) {
          summary << "slope " << fmt(f.fit.fitted_slope) << " +- " << fmt(f.fit.slope_stderr);
        } else {
          summary << "no fit";
        }
        summary << " (bound " << fmt(f.fit.bound_slope) << ")";
      }
      break;
    }
    case Command::dimension: {
      const DimensionReport r = run_dimension(config);
      write_dimension_csv(out, r, config);
      summary << "n=" << r.paths.used << ", box slope " << fmt(r.box_fit.slope) << ", tortuosity slope "
              << fmt(r.tortuosity_fit.slope) << " (1 + kappa/8 = " << fmt(r.target) << ")";
      break;
    }
  }
  write_file(path, out.str());
  summary << " -> " << path;
  return summary.str();
}

}  // namespace sle

#include "sle/io.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

namespace sle {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const TensorSeries& s) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (int n = 0; n <= s.level(); ++n) {
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
      const Word w = Word::from_index(n, i);
      coeffs[w.str()] = s[w];
    }
  }
  return {{"level", s.level()}, {"coeffs", coeffs}};
}

TensorSeries tensor_series_from_json(const nlohmann::json& j) {
  try {
    TensorSeries s(j.at("level").get<int>());
    const auto& coeffs = j.at("coeffs");
    for (int n = 0; n <= s.level(); ++n) {
      for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
        const Word w = Word::from_index(n, i);
        s.coeffs()(static_cast<Eigen::Index>(TensorSeries::offset(n) + i)) = coeffs.at(w.str()).get<double>();
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("tensor series JSON: ") + e.what());
  }
}

nlohmann::json to_json(const ExpectedSignature3& e) {
  nlohmann::json j = to_json(e.coeffs);
  j["a_kappa"] = e.a_kappa;
  return j;
}

nlohmann::json to_json(const PathTally& t) {
  return {{"n", t.used},
          {"n_requested", t.requested},
          {"n_failed", t.failed},
          {"failures", t.failure_messages},
          {"seed_rule", t.seed_rule}};
}

namespace {

void write_preamble(std::ostream& out, const ExperimentConfig& config, const nlohmann::json* summary) {
  out << "# config: " << config.to_json(false).dump() << '\n';
  if (summary) out << "# summary: " << summary->dump() << '\n';
}

template <class... T>
void row(std::ostream& out, const T&... fields) {
  bool first = true;
  auto put = [&](const auto& f) {
    if (!first) out << ',';
    first = false;
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(f)>>) {
      out << format_double(f);
    } else {
      out << f;
    }
  };
  (put(fields), ...);
  out << '\n';
}

}  // namespace

void write_path_csv(std::ostream& out, const PlanarPath& path, const ExperimentConfig& config) {
  const nlohmann::json summary = {{"domain", std::string(to_string(path.domain()))}, {"n_vertices", path.size()}};
  write_preamble(out, config, &summary);
  out << "t,re,im\n";
  for (std::size_t k = 0; k < path.size(); ++k) row(out, path.times()[k], path.points()[k].real(), path.points()[k].imag());
}

void write_akappa_csv(std::ostream& out, const std::vector<AKappaRow>& rows, const ExperimentConfig& config) {
  write_preamble(out, config, nullptr);
  out << "kappa,lambda,closed_form,quadrature,abs_diff\n";
  for (const auto& r : rows) row(out, r.kappa, r.lambda, r.closed_form, r.quadrature, r.abs_diff);
}

void write_left_passage_csv(std::ostream& out, const LeftPassageReport& report, const ExperimentConfig& config) {
  nlohmann::json summary = to_json(report.paths);
  write_preamble(out, config, &summary);
  out << "kappa,r,theta,n_paths,right,left,undecided,frequency,stderr,ci_half_width,predicted\n";
  for (const auto& p : report.points) {
    row(out, config.kappa, p.r, p.theta, report.paths.used, p.right, p.left, p.undecided, p.frequency, p.std_error,
        p.half_width, p.predicted);
  }
}

void write_crossings_csv(std::ostream& out, const CrossingReport& report, const ExperimentConfig& config) {
  nlohmann::json summary = to_json(report.paths);
  nlohmann::json fits = nlohmann::json::array();
  for (const auto& f : report.fits) {
    nlohmann::json jf = {{"k", f.k}, {"bound_slope", f.fit.bound_slope}, {"ok", f.ok}};
    if (f.ok) {
      jf["fitted_slope"] = f.fit.fitted_slope;
      jf["slope_stderr"] = f.fit.slope_stderr;
      jf["warnings"] = f.fit.warnings;
    } else {
      jf["error"] = f.error;
    }
    fits.push_back(jf);
  }
  summary["fits"] = fits;
  nlohmann::json stderrs = nlohmann::json::array();
  for (const auto& r : report.rows) stderrs.push_back(r.std_error);
  summary["stderr"] = stderrs;
  write_preamble(out, config, &summary);
  out << "kappa,center_re,center_im,r,R,k,n_paths,estimate,ci_half_width\n";
  for (const auto& r : report.rows) {
    row(out, config.kappa, r.annulus.center.real(), r.annulus.center.imag(), r.annulus.r, r.annulus.R, r.k,
        r.estimate.trials, r.estimate.estimate, r.estimate.half_width);
  }
}

void write_dimension_csv(std::ostream& out, const DimensionReport& report, const ExperimentConfig& config) {
  nlohmann::json summary = to_json(report.paths);
  summary["target"] = report.target;
  summary["box_slope"] = report.box_fit.slope;
  summary["box_slope_stderr"] = report.box_fit.slope_stderr;
  summary["tortuosity_slope"] = report.tortuosity_fit.slope;
  summary["tortuosity_slope_stderr"] = report.tortuosity_fit.slope_stderr;
  summary["discarded_levels"] = config.discard_levels;
  write_preamble(out, config, &summary);
  out << "kappa,ell,box_count,tortuosity_count\n";
  for (std::size_t j = 0; j < report.ells.size(); ++j) {
    row(out, config.kappa, report.ells[j], report.box_counts[j], report.tortuosity_counts[j]);
  }
}

nlohmann::json signature_report_json(const SignatureMcReport& report, const ExperimentConfig& config) {
  nlohmann::json j;
  j["config"] = config.to_json(false);
  j.update(to_json(report.paths));
  j["estimator"] = report.extrapolated ? "richardson-sqrt" : "fine-grid";
  j["coarse_stride"] = report.coarse_stride;
  j["mean"] = to_json(report.mean);
  j["stderr"] = to_json(report.std_error);
  j["raw_mean"] = to_json(report.raw_mean);
  j["raw_stderr"] = to_json(report.raw_std_error);
  j["closure"] = {{"delta", report.closure_delta},
                  {"mean_length", report.mean_closure_length},
                  {"reached", report.reached},
                  {"half_delta_shift", to_json(report.closure_shift)},
                  {"half_delta_shift_stderr", to_json(report.closure_shift_error)}};
  j["a_kappa"] = report.a_kappa;
  if (report.level >= 3) {
    ExpectedSignature3 expected = expected_signature_level3(KappaParams::from_kappa(config.kappa), config.quadrature);
    j["expected"] = to_json(expected);
    nlohmann::json words = nlohmann::json::object();
    for (const char* w : {"221", "122", "212"}) {
      const Word word(w);
      const double mean = report.mean[word];
      const double se = report.std_error[word];
      const double target = expected.coeffs[word];
      words[w] = {{"mean", mean}, {"stderr", se}, {"target", target}, {"z", se > 0.0 ? (mean - target) / se : 0.0}};
    }
    j["words"] = words;
  }
  return j;
}

ExperimentConfig embedded_config(const std::string& file_contents) {
  const std::string tag = "# config: ";
  if (file_contents.rfind(tag, 0) == 0) {
    const auto end = file_contents.find('\n');
    return ExperimentConfig::from_json(nlohmann::json::parse(file_contents.substr(tag.size(), end - tag.size())));
  }
  try {
    return ExperimentConfig::from_json(nlohmann::json::parse(file_contents).at("config"));
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("no embedded config: ") + e.what());
  }
}

}  // namespace sle

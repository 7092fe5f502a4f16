#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "sle/config.hpp"
#include "sle/experiments.hpp"
#include "sle/formulas.hpp"
#include "sle/loewner.hpp"
#include "sle/signature.hpp"

namespace sle {

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// {"level": N, "coeffs": {"": 1.0, "1": ..., "12": ...}}
nlohmann::json to_json(const TensorSeries& s);
/// Throws ArgumentError unless every word of length <= level is present.
TensorSeries tensor_series_from_json(const nlohmann::json& j);

/// TensorSeries layout plus "a_kappa".
nlohmann::json to_json(const ExpectedSignature3& e);

/// CSV files start with comment lines
///   # config: <resolved config JSON>
///   # summary: <run summary JSON>     (Monte Carlo commands)
/// followed by the header row.
void write_path_csv(std::ostream& out, const PlanarPath& path, const ExperimentConfig& config);
void write_akappa_csv(std::ostream& out, const std::vector<AKappaRow>& rows, const ExperimentConfig& config);
void write_left_passage_csv(std::ostream& out, const LeftPassageReport& report, const ExperimentConfig& config);
void write_crossings_csv(std::ostream& out, const CrossingReport& report, const ExperimentConfig& config);
void write_dimension_csv(std::ostream& out, const DimensionReport& report, const ExperimentConfig& config);

nlohmann::json to_json(const PathTally& t);
nlohmann::json signature_report_json(const SignatureMcReport& report, const ExperimentConfig& config);

/// Parses the "# config:" line of a CSV written above, or the "config" member of a JSON report.
ExperimentConfig embedded_config(const std::string& file_contents);

}  // namespace sle

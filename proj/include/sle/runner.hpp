#pragma once

#include <string>

#include "sle/config.hpp"

namespace sle {

/// Name of the variable holding the default output directory.
inline constexpr const char* kOutputDirEnv = "SLE_OUTPUT_DIR";

/// trace.csv, akappa-table.csv, signature-mc.json, left-passage.csv, crossings.csv, dimension.csv
std::string default_output_name(Command command);

/// config.output_path if set, else the default name inside $SLE_OUTPUT_DIR (or the working
/// directory when the variable is unset or empty).
std::string resolve_output_path(const ExperimentConfig& config);

/// Runs the experiment, writes its output file and returns a one-line summary.
/// Throws ArgumentError on an invalid config or an unwritable output path, NumericError on numeric
/// failure.
std::string run(const ExperimentConfig& config);

}  // namespace sle

// slesim: experiment runner for the SLE library.
//
//   slesim <command> [--config file.json] [--kappa K] [--seed S] [--n-paths N] [--dt DT]
//                    [--n-steps N] [--out PATH] [--threads N]
//
// Exit status: 0 success, 2 configuration error, 3 numeric failure, 1 anything else.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sle/config.hpp"
#include "sle/runner.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericError = 3;

struct Overrides {
  std::string config_file;
  std::optional<double> kappa;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_paths;
  std::optional<double> dt;
  std::optional<std::size_t> n_steps;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;
  std::optional<double> closure_delta;
  std::optional<std::string> grid;
  std::optional<double> t_first;
  std::optional<double> t_last;
};

void add_options(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_file, "JSON config; flags override its fields")->check(CLI::ExistingFile);
  sub->add_option("--kappa", o.kappa, "SLE parameter in (0, 4]");
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--n-paths", o.n_paths, "number of Monte Carlo paths");
  sub->add_option("--dt", o.dt, "uniform capacity step (selects the uniform grid)");
  sub->add_option("--n-steps", o.n_steps, "Loewner steps per path");
  sub->add_option("--out", o.out, "output file (default: $SLE_OUTPUT_DIR/<command>.<ext>)");
  sub->add_option("--threads", o.threads, "worker threads, 0 = all cores");
  sub->add_option("--closure-delta", o.closure_delta, "closure distance to the disk endpoint");
  sub->add_option("--grid", o.grid, "uniform or geometric");
  sub->add_option("--t-first", o.t_first, "first grid time of a geometric grid");
  sub->add_option("--t-last", o.t_last, "last grid time of a geometric grid");
}

sle::ExperimentConfig resolve(const std::string& command, const Overrides& o) {
  nlohmann::json j = nlohmann::json::object();
  if (!o.config_file.empty()) {
    std::ifstream in(o.config_file);
    if (!in) throw sle::ArgumentError("cannot read " + o.config_file);
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw sle::ArgumentError(o.config_file + ": " + e.what());
    }
    if (!j.is_object()) throw sle::ArgumentError(o.config_file + ": config must be a JSON object");
    if (j.contains("command") && j["command"] != command) {
      throw sle::ArgumentError("config file is for command " + j["command"].dump() + ", not \"" + command + "\"");
    }
  }
  j["command"] = command;
  if (o.kappa) j["kappa"] = *o.kappa;
  if (o.seed) j["seed"] = *o.seed;
  if (o.n_paths) j["n_paths"] = *o.n_paths;
  if (o.dt) {
    j["dt"] = *o.dt;
    j["grid"] = "uniform";
  }
  if (o.n_steps) j["n_steps"] = *o.n_steps;
  if (o.out) j["output_path"] = *o.out;
  if (o.threads) j["threads"] = *o.threads;
  if (o.closure_delta) j["closure_delta"] = *o.closure_delta;
  if (o.grid) j["grid"] = *o.grid;
  if (o.t_first) j["t_first"] = *o.t_first;
  if (o.t_last) j["t_last"] = *o.t_last;
  return sle::ExperimentConfig::from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chordal SLE simulations: traces, expected signatures, left passage, crossings, dimension"};
  app.require_subcommand(1);
  Overrides overrides;
  const char* commands[][2] = {
      {"trace", "write one trace as t,re,im"},
      {"akappa-table", "closed forms against quadrature for the seven integer-lambda kappas"},
      {"signature-mc", "Monte Carlo level-3 expected signature in the small disk"},
      {"left-passage", "right-passage frequencies against 1 - phi(theta)"},
      {"crossings", "annulus crossing probabilities and their decay"},
      {"dimension", "box-count and tortuosity scaling of traces"},
  };
  for (const auto& c : commands) add_options(app.add_subcommand(c[0], c[1]), overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const sle::ExperimentConfig config = resolve(command, overrides);
    std::cout << sle::run(config) << std::endl;
    return 0;
  } catch (const sle::ArgumentError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kConfigError;
  } catch (const sle::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << std::endl;
    return kNumericError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}

#pragma once

// Run configuration for the command-line front end. A configuration is a
// JSON document; presets supply defaults, a config file overrides them and
// command-line flags override both. The fully resolved document is kept
// for provenance headers in every output file.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracwos/geometry.hpp"
#include "fracwos/montecarlo.hpp"
#include "fracwos/problem.hpp"

namespace fracwos {

enum class Command { Solve, Path, Steps, PValue, Reference };

/// Invalid configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::Solve;
  std::optional<std::string> builtin;
  std::vector<double> alphas;
  std::size_t dim = 2;
  nlohmann::json domain;
  nlohmann::json g;
  nlohmann::json f;  ///< null when there is no source
  std::vector<Point> eval_points;

  std::optional<double> tol;
  std::uint64_t n_samples = 100'000;
  AdaptivePlan adaptive;
  std::uint64_t seed = 0;
  int workers = 1;
  double eps_skin = 0.0;
  std::size_t n_inner = 1000;
  std::uint64_t step_cap = 1'000'000;

  std::uint64_t runs = 100'000;
  double path_tol = 1e-6;
  std::uint64_t path_steps = 10'000;
  std::string p_method = "both";
  double p_tol = 1e-4;
  double quad_tol = 1e-8;

  std::string output;  ///< empty: standard output
  std::string format;  ///< "json" or "csv"
  bool timing = true;

  nlohmann::json resolved;  ///< the merged document this config was read from
};

Command parse_command(const std::string& name);
std::string to_string(Command command);

/// Defaults for a named preset ("green", "gaussian", "dyda", "swisscheese-steps").
nlohmann::json preset(const std::string& name);

/// Build a RunConfig from a merged document. Throws ConfigError.
RunConfig parse_config(const nlohmann::json& doc);

/// preset(doc["builtin"]) overlaid by doc.
nlohmann::json with_preset_defaults(const nlohmann::json& doc);

Domain build_domain(const nlohmann::json& desc);
ExteriorData build_exterior(const nlohmann::json& desc, const StableParams& params);
std::optional<SourceTerm> build_source(const nlohmann::json& desc, double alpha);

/// Assemble the problem for one alpha of the configuration.
ProblemSpec build_problem(const RunConfig& config, double alpha);

}  // namespace fracwos

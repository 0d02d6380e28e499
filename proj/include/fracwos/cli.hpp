#pragma once

// Command-line front end: argument parsing, config resolution and the
// solve/path/steps/pvalue/reference pipelines.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracwos/config.hpp"

namespace fracwos::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

/// Parse arguments (without the program name) and run. Results go to the
/// configured output file or to `out`; diagnostics go to `err`.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Run an already resolved configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Render the result text for a configuration without touching files.
/// Sets `status` to the exit status the run would return.
std::string render(const RunConfig& config, std::ostream& err, int& status);

}  // namespace fracwos::cli

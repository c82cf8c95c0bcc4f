#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbm/params.hpp"

namespace bbm::cli {

enum class Command {
  simulate,
  inflate,
  sweep,
  sequence,
  verify_bilinear,
  oracle_check,
};

struct RunConfig {
  Command command = Command::inflate;
  ExperimentParams params;
  std::vector<std::size_t> k1_list;  // sweep
  std::vector<double> targets;       // sequence
  std::size_t k1_cap = 4096;         // sequence search cap
  double q = 0.0;                    // verify-bilinear
  std::size_t trials = 1000;         // verify-bilinear
  std::string output_dir = "out";
  bool emit_plots = false;
  bool dump_coefficients = false;
  std::uint64_t seed = 42;
  int jobs = 1;
};

// Flags override config-file values override defaults. Unknown flags or
// config keys throw ConfigError; parameter-invariant violations surface the
// module errors (GammaOutOfRange, MuTooSmall) untouched.
RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& config_file = std::nullopt);

// Runs the configured pipeline, writing all outputs under
// config.output_dir. Returns the process exit code (0 ok, 3 runtime
// failure); configuration problems have already been rejected by
// parse_config with exit code 2 semantics.
int dispatch(const RunConfig& config);

// argv entry point: parse + dispatch with the documented exit codes
// (0 success, 2 invalid configuration, 3 runtime failure).
int run(int argc, const char* const* argv);

}  // namespace bbm::cli

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "degenwave/params.hpp"

namespace degenwave {

inline constexpr const char* kVersion = "degenwave 0.1.0";

/// Exit-code contract: 0 success, 1 invariant failure, 2 configuration error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariantFailure = 1;
inline constexpr int kExitConfigError = 2;

/// Fully resolved run configuration: defaults, then config-file values, then
/// command-line flags. No computation starts before resolution.
struct RunConfig {
  ModelParams params;
  std::string out_base = "degenwave_out";  ///< outputs: <out>.csv, <out>.meta.json

  // observe
  int eig_count = 50;
  int random_count = 20;

  // quasimode
  std::vector<QuasimodeSpec> quasimodes;

  // audit: eigenmode selection (n,k with k 1-based) and refinement ladder
  std::vector<std::pair<int, int>> audit_modes;
  std::vector<std::pair<int, int>> audit_ladder;  ///< (n_r, n_theta) pairs

  int threads = 0;  ///< parallelism cap; 0 = auto (DEGENWAVE_THREADS)
};

/// Applies a JSON config document (flat ModelParams keys plus per-command
/// sections) on top of cfg. Throws std::invalid_argument on malformed input.
void apply_config_json(const std::string& json_text, const std::string& command, RunConfig& cfg);

int run_spectrum(const RunConfig& cfg);
int run_observe(const RunConfig& cfg);
int run_quasimode(const RunConfig& cfg);
int run_audit(const RunConfig& cfg);
int run_verify(const RunConfig& cfg);

/// Full command-line entry point (subcommands spectrum | observe | quasimode |
/// audit | verify).
int cli_main(int argc, const char* const* argv);

}  // namespace degenwave

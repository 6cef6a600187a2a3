#pragma once

// Experiment commands behind the otm-experiments CLI. Each command writes its
// outputs plus <command>.status.json into the output directory and returns
// an exit code: 0 pass, 2 claim-check failure, 3 I/O or configuration error.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "otm/serialize.hpp"

namespace otm {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFinding = 2;
inline constexpr int kExitIo = 3;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "OTM_OUTPUT_DIR";

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::vector<std::size_t> n_values{20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
  std::size_t restarts = 1000;
  std::size_t generations_max = 10000;
  double grid_step = 0.05;
  std::size_t trials = 100000;
  double constraint_threshold = 0.83;
  std::string output_dir = "otm-output";
};

/// Throws Error(InvalidArgument) naming the offending field.
void validate(const ExperimentConfig& config);
/// Keys are the ExperimentConfig field names; unknown keys are rejected.
/// Missing keys keep the values already in `base`.
ExperimentConfig config_from_json(const Json& j, ExperimentConfig base = {});
Json config_to_json(const ExperimentConfig& config);

struct RunOptions {
  unsigned workers = 1;
  /// Record wall times. Off by default so output files are byte-stable.
  bool timing = false;
};

struct CommandResult {
  std::string command;
  int exit_code = kExitPass;
  std::vector<std::string> outputs;  // file names relative to output_dir
  std::vector<std::string> findings;
  std::vector<std::string> notes;
  double wall_time = 0.0;
};

CommandResult cmd_qrac_check(const ExperimentConfig& config, const RunOptions& options = {});
CommandResult cmd_optimize(const ExperimentConfig& config, const RunOptions& options = {});
CommandResult cmd_certify(const ExperimentConfig& config, const RunOptions& options = {});
CommandResult cmd_correctness(const ExperimentConfig& config, const RunOptions& options = {});
CommandResult cmd_adversary(const ExperimentConfig& config, const RunOptions& options = {});
CommandResult cmd_tails(const ExperimentConfig& config, const RunOptions& options = {});
/// Aggregates the six status files into manifest.json and report.txt.
CommandResult cmd_report(const ExperimentConfig& config, const RunOptions& options = {});

/// The six claim-checking commands in pipeline order.
const std::vector<std::string>& pipeline_commands();
/// Dispatches by subcommand name. Throws Error(InvalidArgument) for unknown names.
CommandResult run_command(const std::string& name, const ExperimentConfig& config, const RunOptions& options = {});

// Fixed experiment sizes.
inline constexpr std::size_t kClaimSweepSamples = 1000000;
inline constexpr std::size_t kEvolutionPopulation = 40;
inline constexpr std::size_t kSimulatorN = 100;
inline constexpr std::size_t kTailsN = 1000;
inline constexpr std::size_t kLargeCorrectnessN = 1000000;
/// Monte Carlo and exact joint-tail rows are limited to n at most this.
inline constexpr std::size_t kMaxSimulatedN = 1000;

}  // namespace otm

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "wavepressure/config.hpp"

namespace wavepressure {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitNoConvergence = 2,
  kExitViolation = 3,
  kExitIo = 4,
};

/// Exit code for an error raised while running a command.
int exit_code_for(ErrorKind kind) noexcept;

/// Writes state.json and residuals.json.
int cmd_solve(const RunConfig& config, std::ostream& log, std::ostream& err);
/// Reuses state.json from the output directory when it was produced for the
/// same parameters, otherwise solves first. Writes report.json.
int cmd_verify(const RunConfig& config, std::ostream& log, std::ostream& err);
/// Writes field.csv on an nx x ny full-period grid.
int cmd_field(const RunConfig& config, std::ostream& log, std::ostream& err);
/// Continuation through `heights` with verification per state; sweep.csv is
/// rewritten after every row so a failure keeps the completed rows.
int cmd_sweep(const RunConfig& config, std::ostream& log, std::ostream& err);

/// Loads the config, applies the output override and dispatches.
int run_command(std::string_view command, const std::filesystem::path& config_path,
                const std::optional<std::filesystem::path>& output_dir, std::ostream& log, std::ostream& err);

}  // namespace wavepressure

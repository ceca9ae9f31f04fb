#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavepressure/model.hpp"
#include "wavepressure/solver.hpp"

namespace wavepressure {

/// Everything one CLI run needs.
struct RunConfig {
  ParameterSet wave;
  SolverSettings solver;
  int nx = 65;
  int ny = 33;
  std::filesystem::path output_dir = "out";
  std::vector<double> heights;
  std::optional<double> y0;

  WaveParameters params() const { return WaveParameters::validate(wave); }
};

/// Parses line-oriented `key = value` text. `#` starts a comment; keys are
/// case-sensitive; unknown keys are errors.
///
/// Keys: L, depth (number | deep), current, density, gravity, p_atm, height,
/// modes, surface_nodes, newton_tol, max_iters, continuation_steps, damping,
/// branch (following | opposing), speed, nx, ny, heights (comma list), y0,
/// output_dir.
RunConfig parse_config(std::string_view source);

RunConfig load_config(const std::filesystem::path& path);

}  // namespace wavepressure

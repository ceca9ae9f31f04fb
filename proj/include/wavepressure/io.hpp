#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wavepressure/model.hpp"
#include "wavepressure/solver.hpp"
#include "wavepressure/verify.hpp"

namespace wavepressure {

/// Round-trip exact JSON for a solved state (parameters included).
std::string state_to_json(const FlowState& state);
/// Throws TypeMismatch / MissingRequired on malformed input, plus any
/// parameter validation error.
FlowState state_from_json(std::string_view text);

std::string residuals_to_json(const FlowState& state, const ResidualReport& report);

std::string report_to_json(const FlowState& state, const VerificationReport& report);

/// Check names, verdicts and extrema node indices only; no numeric margins.
/// Two reports with equal fingerprints reached the same conclusions.
std::string verdict_fingerprint(const VerificationReport& report);

/// `x,y,psi,u,v,P,p_dyn` rows, column-major over the grid (each column from
/// the bottom level to the surface), 17 significant digits.
std::string field_csv(const FieldGrid& grid);

/// %.17g.
std::string format_double(double value);

/// Writes via a temporary sibling file and rename. Throws Io.
void write_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

void save_state(const std::filesystem::path& path, const FlowState& state);
FlowState load_state(const std::filesystem::path& path);

}  // namespace wavepressure

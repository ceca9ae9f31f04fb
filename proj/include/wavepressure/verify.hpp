#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wavepressure/model.hpp"
#include "wavepressure/solver.hpp"

namespace wavepressure {

/// Outcome of one sampled check. Inconclusive means no sample contradicts the
/// claim but some sample fell inside the strictness margin.
enum class Verdict { Pass, Fail, Inconclusive, Degenerate, Skipped };

std::string_view to_string(Verdict verdict);

struct Location {
  double x = 0.0;
  double y = 0.0;
};

struct VerifyOptions {
  /// Positive margin demanded of every strict inequality (nondimensional:
  /// velocities / sqrt(g/kappa), pressures / (rho g / kappa), pressure
  /// gradients / (rho g)).
  double strict_margin = 1e-9;
  /// Below this nondimensional spread the dynamic pressure counts as constant.
  double degenerate_tolerance = 1e-9;
  /// Tolerance for quantities that vanish exactly (v on the crest/trough lines).
  double zero_tolerance = 1e-10;
  /// Deep water: strict checks cover y >= -resolvable_wavelengths * L, below
  /// which the wave signal decays under the margin (exp(-2 pi) per wavelength).
  double resolvable_wavelengths = 1.0;
  /// Deep-water tail bound |p(x, -3L)| < tail_factor * rho g H.
  double tail_factor = 1e-6;
};

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  /// Smallest signed margin over the checked samples (positive = strictly satisfied).
  double worst_margin = 0.0;
  Location worst_location;
  int samples = 0;
  int inconclusive = 0;
  std::string note;
  std::map<std::string, double> metrics;

  bool satisfied() const noexcept { return verdict != Verdict::Fail; }
};

struct InvariantReport {
  std::vector<CheckResult> checks;

  bool satisfied() const noexcept;
  const CheckResult* find(std::string_view name) const noexcept;
  void append(const InvariantReport& other);
};

struct ExtremaReport {
  Location max_location;
  double max_value = 0.0;
  Location min_location;
  double min_value = 0.0;
  int max_column = 0, max_level = 0;
  int min_column = 0, min_level = 0;
  bool crest_is_max = false;
  bool trough_is_min = false;
  /// min over strictly interior samples of (max_value - p); of (p - min_value).
  double max_margin = 0.0;
  double min_margin = 0.0;
  double margin = 0.0;
};

struct EllipticResidualReport {
  double spacing = 0.0;
  double residual_max = 0.0;          ///< Pa / m^2
  double residual_max_scaled = 0.0;   ///< residual / (rho g kappa)
  double coefficient_max = 0.0;       ///< max(|alpha|, |beta|), 1/m
  Location worst_location;
  int points = 0;
};

enum class BoundaryPath { CrestVertical, Bed, TroughVertical, Surface, CrestTail, TroughTail };

std::string_view to_string(BoundaryPath path);

struct PathResult {
  BoundaryPath path = BoundaryPath::CrestVertical;
  /// Traversal along which p must strictly decrease (or the tail bound).
  std::string direction;
  bool strictly_monotone = false;
  std::optional<Location> violation;
  int inconclusive_steps = 0;
  double min_step = 0.0;  ///< smallest nondimensional decrease per step
};

struct MonotonicityReport {
  std::vector<PathResult> paths;
  bool degenerate = false;

  bool satisfied() const noexcept;
};

/// Argmax / argmin of the dynamic pressure over a half-period grid.
/// Throws DegenerateField when the field is constant.
ExtremaReport locate_extrema(const FieldGrid& grid, const FlowState& state, const VerifyOptions& options = {});

InvariantReport check_sign_invariants(const FlowState& state, const FieldGrid& grid, const VerifyOptions& options = {});

MonotonicityReport check_monotonicity(const FlowState& state, int npath, const VerifyOptions& options = {});

/// Finite-difference residual of p_xx + p_yy = alpha p_x + beta p_y at the
/// strictly interior grid samples whose stencil of half-width `spacing`
/// stays in the fluid. A non-positive spacing selects L / 100.
EllipticResidualReport check_elliptic_identity(const FlowState& state, const FieldGrid& grid, double spacing = 0.0);

InvariantReport check_degenerate_current(const FlowState& state, const FieldGrid& grid, const VerifyOptions& options = {});

InvariantReport check_symmetry(const FlowState& state, const FieldGrid& grid, const VerifyOptions& options = {});

InvariantReport check_interior_exclusion(const FlowState& state, const FieldGrid& grid, const VerifyOptions& options = {});

/// Depth invariance of the mean current at `levels` heights below the trough.
CheckResult check_mean_current(const FlowState& state, int levels = 5);

/// Quadrature flux at several stations against the stored flux (finite depth).
CheckResult check_flux(const FlowState& state);

/// Off-collocation boundary residuals against `tolerance` (nondimensional).
CheckResult check_residuals(const FlowState& state, double tolerance = 1e-8);

/// Whether |k - c| is below the degenerate-current gate.
bool is_degenerate_current(const FlowState& state);

struct VerificationReport {
  bool degenerate = false;
  std::optional<ExtremaReport> extrema;
  InvariantReport invariants;
  MonotonicityReport monotonicity;
  std::optional<EllipticResidualReport> elliptic_coarse;
  std::optional<EllipticResidualReport> elliptic_fine;
  std::optional<double> elliptic_ratio;
  std::vector<std::string> notes;

  bool satisfied() const noexcept;
  /// Names of failing checks.
  std::vector<std::string> violations() const;
};

struct VerifyPlan {
  int nx = 129;
  int ny = 65;
  int npath = 64;
  double residual_tolerance = 1e-8;
  VerifyOptions options;
};

/// Runs every applicable check in a fixed order.
VerificationReport verify_state(const FlowState& state, const VerifyPlan& plan = {});

}  // namespace wavepressure

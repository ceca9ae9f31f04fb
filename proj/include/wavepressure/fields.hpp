#pragma once

#include <vector>

#include "wavepressure/basis.hpp"
#include "wavepressure/model.hpp"

namespace wavepressure {

/// Depth at which deep-water grids and paths are truncated (-3L).
double deep_truncation_level(const WaveParameters& params);

struct Velocity {
  double u = 0.0;
  double v = 0.0;
};

/// Evaluates all fields of one state. Construct once and query many points.
///
/// With `check_domain` set, points above the surface (beyond a band of
/// 1e-12 L) or below the bed raise OutOfDomain. Without it the harmonic
/// series is evaluated as is, which finite-difference stencils rely on.
class FieldEvaluator {
 public:
  explicit FieldEvaluator(const FlowState& state, bool check_domain = true);

  double surface(double x) const;
  SurfaceJet surface_jet(double x) const;
  StreamJet stream_jet(double x, double y) const;

  double stream(double x, double y) const { return stream_jet(x, y).psi; }
  Velocity velocity(double x, double y) const;
  double pressure(double x, double y) const;
  double dynamic_pressure(double x, double y) const;
  FieldSample sample(double x, double y) const;

  /// P - P_atm + rho g y computed from the total pressure, i.e. the second
  /// route to the dynamic pressure.
  double dynamic_pressure_from_total(double x, double y) const;

  const FlowState& state() const noexcept { return *state_; }
  double reduce(double x) const;

 private:
  void check(double x, double y) const;

  const FlowState* state_;
  StreamBasis basis_;
  bool check_domain_;
  bool flat_ = false;
  double tolerance_;
};

double surface_at(const FlowState& state, double x);
double stream_at(const FlowState& state, double x, double y);
Velocity velocity_at(const FlowState& state, double x, double y);
double pressure_at(const FlowState& state, double x, double y);
double dynamic_pressure_at(const FlowState& state, double x, double y);

/// -int_{-d}^{eta(x)} (u - c) dy by 32-point Gauss-Legendre quadrature.
double flux_at(const FlowState& state, double x);
/// Mean of flux_at over `stations` equispaced abscissae of one period.
double flux(const FlowState& state, int stations = 8);

/// (1/L) int_0^L u(x, y0) dx, composite trapezoid rule.
double mean_current(const FlowState& state, double y0);

struct GridOptions {
  /// Stretching exponent of the deep-water sigma map (clusters levels near the surface).
  double deep_stretching = 4.0;
  /// Overrides the deep-water truncation level when set.
  std::optional<double> deep_floor;
};

FieldGrid sample_grid(const FlowState& state, int nx, int ny, Region region, const GridOptions& options = {});

}  // namespace wavepressure

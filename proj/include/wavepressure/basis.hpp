#pragma once

#include <optional>
#include <span>

namespace wavepressure {

/// psi and its derivatives up to second order at one point.
struct StreamJet {
  double psi = 0.0;
  double psi_x = 0.0;
  double psi_y = 0.0;
  double psi_xx = 0.0;
  double psi_xy = 0.0;
  double psi_yy = 0.0;

  double speed_squared() const noexcept { return psi_x * psi_x + psi_y * psi_y; }
};

/// Harmonic stream-function basis shared by the solver (nondimensional) and
/// the field evaluators (dimensional):
///
///   psi = m + cbar (y + d) + sum_j b_j S_j(y) cos(j kappa x)
///
/// with S_j = sinh(j kappa (y+d)) / cosh(j kappa d) for finite depth and
/// S_j = exp(j kappa y) with d = 0 for deep water. Every member satisfies
/// Laplace's equation and, for finite depth, psi_x = 0 on y = -d.
struct StreamBasis {
  double wavenumber = 1.0;
  std::optional<double> depth;
  double relative_current = 0.0;  ///< cbar = k - c
  double offset = 0.0;            ///< m
  std::span<const double> coeffs; ///< b_1..b_N

  double reference_depth() const noexcept { return depth ? *depth : 0.0; }

  /// S_j(y) and C_j(y) = S_j'(y) / (j kappa).
  void vertical_modes(int j, double y, double& s, double& c) const noexcept;

  StreamJet evaluate(double x, double y) const noexcept;
};

/// eta(x) = sum_j a_j cos(j kappa x) and its first two x-derivatives.
struct SurfaceJet {
  double eta = 0.0;
  double eta_x = 0.0;
  double eta_xx = 0.0;
};

SurfaceJet evaluate_surface(std::span<const double> coeffs, double wavenumber, double x) noexcept;

}  // namespace wavepressure

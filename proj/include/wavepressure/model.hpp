#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wavepressure/error.hpp"

namespace wavepressure {

inline constexpr double kPi = 3.14159265358979323846;

/// Unvalidated user input. An empty depth selects deep water.
struct ParameterSet {
  double wavelength = 0.0;
  std::optional<double> depth;
  double current = 0.0;
  double density = 1000.0;
  double gravity = 9.81;
  double atmospheric_pressure = 101325.0;
  double height = 0.0;
  int modes = 32;
  /// 0 selects 2 * modes (oversampled least-squares collocation).
  int surface_nodes = 0;
  /// Wave speed of the flat state. Only meaningful when height == 0, where
  /// every speed solves the equations; unset picks the linear dispersion speed.
  std::optional<double> flat_speed;

  bool operator==(const ParameterSet&) const = default;
};

/// Validated dimensional (SI) wave parameters. Immutable.
class WaveParameters {
 public:
  static WaveParameters validate(const ParameterSet& raw);

  const ParameterSet& raw() const noexcept { return raw_; }

  double wavelength() const noexcept { return raw_.wavelength; }
  bool is_deep() const noexcept { return !raw_.depth.has_value(); }
  /// Mean depth; throws DeepWaterUnsupported for deep water.
  double depth() const;
  double current() const noexcept { return raw_.current; }
  double density() const noexcept { return raw_.density; }
  double gravity() const noexcept { return raw_.gravity; }
  double atmospheric_pressure() const noexcept { return raw_.atmospheric_pressure; }
  double height() const noexcept { return raw_.height; }
  int modes() const noexcept { return raw_.modes; }
  int surface_nodes() const noexcept { return raw_.surface_nodes; }
  const std::optional<double>& flat_speed() const noexcept { return raw_.flat_speed; }

  double wavenumber() const noexcept { return 2.0 * kPi / raw_.wavelength; }

  /// Copy with a different wave height (re-validated).
  WaveParameters with_height(double height) const;
  /// Copy with a different current (re-validated).
  WaveParameters with_current(double current) const;

  bool operator==(const WaveParameters&) const = default;

 private:
  explicit WaveParameters(ParameterSet raw) : raw_(std::move(raw)) {}
  ParameterSet raw_;
};

/// Nondimensional parameters: lengths in units of 1/kappa, velocities in
/// units of sqrt(g/kappa), pressures in units of rho*g/kappa.
struct ScaledParameters {
  double length_scale = 1.0;
  double time_scale = 1.0;
  double velocity_scale = 1.0;
  double pressure_scale = 1.0;
  double density = 1.0;

  double wavenumber = 1.0;
  double gravity = 1.0;
  double wavelength = 2.0 * kPi;
  std::optional<double> depth;
  double current = 0.0;
  double height = 0.0;
  double atmospheric_pressure = 0.0;
  std::optional<double> flat_speed;
  int modes = 1;
  int surface_nodes = 2;

  double stream_scale() const noexcept { return velocity_scale * length_scale; }

  /// Back to dimensional parameters.
  WaveParameters unscale() const;
};

ScaledParameters scale(const WaveParameters& params);

/// Converged spectral solution in dimensional units.
///
/// Surface: eta(x) = sum_{j=0..N} a_j cos(j kappa x), a_0 = 0.
/// Finite depth stream function:
///   psi = m + (k - c)(y + d) + sum_j b_j sinh(j kappa (y+d)) / cosh(j kappa d) cos(j kappa x)
/// Deep water:
///   psi = m - c y + sum_j b_j exp(j kappa y) cos(j kappa x)
/// where m is the relative mass flux (finite depth) or the additive stream
/// constant that keeps psi = 0 on a zero-mean surface (deep water).
struct FlowState {
  explicit FlowState(WaveParameters p) : params(std::move(p)) {}

  WaveParameters params;
  double wave_speed = 0.0;
  std::vector<double> surface_coeffs;  ///< a_0..a_N
  std::vector<double> stream_coeffs;   ///< b_1..b_N (index 0 is j = 1)
  double flux = 0.0;
  double head = 0.0;                   ///< Q (finite) or E (deep)
  double residual_norm = 0.0;          ///< nondimensional max collocation residual
  int newton_iterations = 0;

  double wavenumber() const noexcept { return params.wavenumber(); }
  /// k - c, the coefficient of the linear term of psi.
  double relative_current() const noexcept { return params.current() - wave_speed; }
  int modes() const noexcept { return static_cast<int>(stream_coeffs.size()); }
  bool is_flat() const noexcept;
};

/// Point values of every field. x is reduced to [0, L).
struct FieldSample {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
  double u = 0.0;
  double v = 0.0;
  double pressure = 0.0;
  double dynamic_pressure = 0.0;
};

enum class Region { FullPeriod, HalfPeriod, Surface, Bed, CrestLine, TroughLine };

/// Boundary-fitted structured samples: column i is the vertical line
/// x = column_x[i], level j runs from the bed (finite depth) or truncation
/// depth (deep water) at j = 0 to the free surface at j = ny - 1.
struct FieldGrid {
  Region region = Region::HalfPeriod;
  int nx = 0;
  int ny = 0;
  std::vector<double> column_x;  ///< unreduced column abscissae
  std::vector<FieldSample> samples;

  const FieldSample& at(int i, int j) const { return samples[static_cast<std::size_t>(i) * ny + j]; }
  FieldSample& at(int i, int j) { return samples[static_cast<std::size_t>(i) * ny + j]; }
};

/// Same moving-frame flow observed with a current larger by `delta`: both k
/// and c shift, every coefficient and the pressure field stay unchanged.
FlowState galilean_shift(const FlowState& state, double delta);

/// Reverses the moving-frame flow (psi -> -psi): k - c changes sign while
/// eta, Q and the pressure fields are preserved. The current is kept, so the
/// returned wave speed is 2k - c.
FlowState reverse_relative_flow(const FlowState& state);

}  // namespace wavepressure

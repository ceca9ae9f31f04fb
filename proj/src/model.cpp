#include "wavepressure/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wavepressure {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::NegativeHeight: return "NegativeHeight";
    case ErrorKind::DeepWithCurrent: return "DeepWithCurrent";
    case ErrorKind::HeightExceedsDepth: return "HeightExceedsDepth";
    case ErrorKind::InvalidSettings: return "InvalidSettings";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SteepnessLimit: return "SteepnessLimit";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::DeepWaterUnsupported: return "DeepWaterUnsupported";
    case ErrorKind::AboveTrough: return "AboveTrough";
    case ErrorKind::DegenerateField: return "DegenerateField";
    case ErrorKind::PathOutOfDomain: return "PathOutOfDomain";
    case ErrorKind::VanishingGradient: return "VanishingGradient";
    case ErrorKind::NotDegenerate: return "NotDegenerate";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::MissingRequired: return "MissingRequired";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::NonPositive, std::string(name) + " must be positive, got " + std::to_string(value));
  }
}

}  // namespace

WaveParameters WaveParameters::validate(const ParameterSet& raw) {
  require_positive(raw.wavelength, "L");
  require_positive(raw.density, "density");
  require_positive(raw.gravity, "gravity");
  if (raw.modes < 1) {
    throw Error(ErrorKind::NonPositive, "N must be at least 1");
  }
  if (!std::isfinite(raw.height) || !std::isfinite(raw.current) || !std::isfinite(raw.atmospheric_pressure)) {
    throw Error(ErrorKind::TypeMismatch, "non-finite parameter");
  }
  if (raw.height < 0.0) {
    throw Error(ErrorKind::NegativeHeight, "wave height must be non-negative");
  }
  ParameterSet out = raw;
  if (out.surface_nodes == 0) out.surface_nodes = std::max(2 * out.modes, out.modes + 1);
  if (out.surface_nodes < out.modes + 1) {
    throw Error(ErrorKind::InvalidSettings, "surface_nodes must be at least modes + 1");
  }
  if (out.depth) {
    require_positive(*out.depth, "depth");
    if (out.height >= *out.depth) {
      throw Error(ErrorKind::HeightExceedsDepth, "wave height must be below the mean depth");
    }
  } else if (out.current != 0.0) {
    throw Error(ErrorKind::DeepWithCurrent, "deep water admits no underlying current");
  }
  if (out.flat_speed) {
    if (out.height != 0.0) {
      throw Error(ErrorKind::InvalidSettings, "a prescribed speed applies only to the flat state (height = 0)");
    }
    if (!std::isfinite(*out.flat_speed)) {
      throw Error(ErrorKind::TypeMismatch, "non-finite speed");
    }
  }
  return WaveParameters(std::move(out));
}

double WaveParameters::depth() const {
  if (!raw_.depth) throw Error(ErrorKind::DeepWaterUnsupported, "deep water has no finite depth");
  return *raw_.depth;
}

WaveParameters WaveParameters::with_height(double height) const {
  ParameterSet raw = raw_;
  raw.height = height;
  if (height != 0.0) raw.flat_speed.reset();
  return validate(raw);
}

WaveParameters WaveParameters::with_current(double current) const {
  ParameterSet raw = raw_;
  raw.current = current;
  return validate(raw);
}

ScaledParameters scale(const WaveParameters& params) {
  ScaledParameters s;
  const double kappa = params.wavenumber();
  const double g = params.gravity();
  s.length_scale = 1.0 / kappa;
  s.time_scale = 1.0 / std::sqrt(g * kappa);
  s.velocity_scale = std::sqrt(g / kappa);
  s.density = params.density();
  s.pressure_scale = params.density() * g / kappa;
  s.wavenumber = 1.0;
  s.gravity = 1.0;
  s.wavelength = params.wavelength() / s.length_scale;
  if (!params.is_deep()) s.depth = params.depth() / s.length_scale;
  s.current = params.current() / s.velocity_scale;
  s.height = params.height() / s.length_scale;
  s.atmospheric_pressure = params.atmospheric_pressure() / s.pressure_scale;
  if (params.flat_speed()) s.flat_speed = *params.flat_speed() / s.velocity_scale;
  s.modes = params.modes();
  s.surface_nodes = params.surface_nodes();
  return s;
}

WaveParameters ScaledParameters::unscale() const {
  ParameterSet raw;
  raw.wavelength = wavelength * length_scale;
  if (depth) raw.depth = *depth * length_scale;
  raw.current = current * velocity_scale;
  raw.density = density;
  raw.gravity = length_scale / (time_scale * time_scale);
  raw.atmospheric_pressure = atmospheric_pressure * pressure_scale;
  raw.height = height * length_scale;
  raw.modes = modes;
  raw.surface_nodes = surface_nodes;
  if (flat_speed) raw.flat_speed = *flat_speed * velocity_scale;
  return WaveParameters::validate(raw);
}

bool FlowState::is_flat() const noexcept {
  for (double a : surface_coeffs) {
    if (a != 0.0) return false;
  }
  for (double b : stream_coeffs) {
    if (b != 0.0) return false;
  }
  return true;
}

FlowState galilean_shift(const FlowState& state, double delta) {
  FlowState out = state;
  ParameterSet raw = state.params.raw();
  raw.current += delta;
  if (raw.flat_speed) *raw.flat_speed += delta;
  out.params = WaveParameters::validate(raw);
  out.wave_speed = state.wave_speed + delta;
  return out;
}

FlowState reverse_relative_flow(const FlowState& state) {
  FlowState out = state;
  out.wave_speed = 2.0 * state.params.current() - state.wave_speed;
  for (double& b : out.stream_coeffs) b = -b;
  out.flux = -state.flux;
  ParameterSet raw = state.params.raw();
  if (raw.flat_speed) raw.flat_speed = out.wave_speed;
  out.params = WaveParameters::validate(raw);
  return out;
}

}  // namespace wavepressure

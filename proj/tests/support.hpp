#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include "wavepressure/solver.hpp"

namespace testing {

using namespace wavepressure;

inline WaveParameters finite_params(double height_ratio, double depth_ratio = 0.3, double current = 0.0,
                                    int modes = 32) {
  ParameterSet raw;
  raw.wavelength = 10.0;
  raw.depth = depth_ratio * raw.wavelength;
  raw.current = current;
  raw.height = height_ratio * raw.wavelength;
  raw.modes = modes;
  return WaveParameters::validate(raw);
}

inline WaveParameters deep_params(double height_ratio, int modes = 32) {
  ParameterSet raw;
  raw.wavelength = 10.0;
  raw.height = height_ratio * raw.wavelength;
  raw.modes = modes;
  return WaveParameters::validate(raw);
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("wavepressure_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing

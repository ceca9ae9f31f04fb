#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wavepressure {

enum class ErrorKind {
  NonPositive,
  NegativeHeight,
  DeepWithCurrent,
  HeightExceedsDepth,
  InvalidSettings,
  NoConvergence,
  SteepnessLimit,
  OutOfDomain,
  DeepWaterUnsupported,
  AboveTrough,
  DegenerateField,
  PathOutOfDomain,
  VanishingGradient,
  NotDegenerate,
  UnknownKey,
  TypeMismatch,
  MissingRequired,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-checkable error kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the solver; carries the last Newton residual and the failing
/// continuation step (0-based, -1 when not applicable).
class ConvergenceError : public Error {
 public:
  ConvergenceError(ErrorKind kind, const std::string& what, double last_residual, int step)
      : Error(kind, what), last_residual_(last_residual), step_(step) {}

  double last_residual() const noexcept { return last_residual_; }
  int step() const noexcept { return step_; }

 private:
  double last_residual_;
  int step_;
};

}  // namespace wavepressure

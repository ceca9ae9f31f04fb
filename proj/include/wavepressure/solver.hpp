#pragma once

#include <vector>

#include "wavepressure/model.hpp"

namespace wavepressure {

/// Which root of the relative-current sign the solver follows. For a given
/// current k the flat-state speeds are c = k +- c0; `Following` picks c > k
/// (k < c, waves outrun the current), `Opposing` picks c < k.
enum class Branch { Following, Opposing };

struct SolverSettings {
  double newton_tol = 1e-11;
  int max_newton_iters = 50;
  int continuation_steps = 4;
  double damping = 1.0;
  Branch branch = Branch::Following;

  void validate() const;
};

/// Boundary-condition residuals sampled away from the collocation nodes.
struct ResidualReport {
  double kinematic_max = 0.0;  ///< m^2/s
  double bernoulli_max = 0.0;  ///< m
  double bed_max = 0.0;        ///< m^2/s, finite depth only
  int samples = 0;

  /// Same maxima in nondimensional units (lengths * kappa, psi / (sqrt(g/kappa)/kappa)).
  ResidualReport nondimensional(const WaveParameters& params) const;
};

/// First-order (linear) wave of the given amplitude. Used as Newton seed and
/// as an independent oracle for small amplitudes.
FlowState linear_wave(const WaveParameters& params, double amplitude, Branch branch = Branch::Following);

/// Linear dispersion speed c0 with c = k + c0 on the following branch.
double linear_phase_speed(const WaveParameters& params);

FlowState solve_steady(const WaveParameters& params, const SolverSettings& settings = {});
FlowState solve_deep(const WaveParameters& params, const SolverSettings& settings = {});
/// Dispatches on the depth mode.
FlowState solve(const WaveParameters& params, const SolverSettings& settings = {});

/// Solves each height in turn, seeding from the previous solution. Heights
/// must be strictly increasing. On failure throws ConvergenceError whose
/// step() is the index of the failing height.
std::vector<FlowState> continuation_sweep(const WaveParameters& params, const std::vector<double>& heights,
                                          const SolverSettings& settings = {});

/// One continuation step from `previous` to a new height (same parameters
/// otherwise), bisecting the step once on failure.
FlowState continue_to(const FlowState& previous, double height, const SolverSettings& settings = {});

/// Newton refinement from an explicit seed (same parameters). Exposed for
/// custom continuation schemes.
FlowState refine(const FlowState& seed, const WaveParameters& target, const SolverSettings& settings);

ResidualReport residual(const FlowState& state, int dense_factor = 4);

}  // namespace wavepressure

#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "wavepressure/solver.hpp"

using namespace wavepressure;
using testing::deep_params;
using testing::finite_params;

namespace {

/// c0 from g tanh(kappa d) / kappa, worked independently of the library.
double dispersion_speed(double g, double wavelength, double depth) {
  const double kappa = 2.0 * kPi / wavelength;
  return std::sqrt(g / kappa * std::tanh(kappa * depth));
}

/// Second-order amplitude dispersion for zero mean current (Stokes' first
/// definition of speed): c = c0 (1 + (ka)^2 (8 + cosh 4kd - 2 tanh^2 kd) / (16 sinh^4 kd)).
double stokes_speed(double g, double wavelength, double depth, double amplitude) {
  const double kappa = 2.0 * kPi / wavelength;
  const double kd = kappa * depth;
  const double ka = kappa * amplitude;
  const double t = std::tanh(kd);
  const double s = std::sinh(kd);
  return dispersion_speed(g, wavelength, depth) * (1.0 + ka * ka * (8.0 + std::cosh(4.0 * kd) - 2.0 * t * t) /
                                                               (16.0 * s * s * s * s));
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("linear phase speed matches dispersion relation") {
    const WaveParameters p = finite_params(0.0, 0.3);
    CHECK(linear_phase_speed(p) == doctest::Approx(dispersion_speed(9.81, 10.0, 3.0)).epsilon(1e-14));
    const WaveParameters d = deep_params(0.0);
    CHECK(linear_phase_speed(d) == doctest::Approx(std::sqrt(9.81 * 10.0 / (2.0 * kPi))).epsilon(1e-14));
  }

  TEST_CASE("flat state") {
    const WaveParameters p = finite_params(0.0, 0.5);
    const FlowState s = solve(p);
    CHECK(s.is_flat());
    for (double a : s.surface_coeffs) CHECK(a == 0.0);
    for (double b : s.stream_coeffs) CHECK(b == 0.0);
    const double c = dispersion_speed(9.81, 10.0, 5.0);
    CHECK(s.wave_speed == doctest::Approx(c).epsilon(1e-14));
    // psi = 0 on y = 0 and the Bernoulli constant of a uniform stream.
    CHECK(s.flux == doctest::Approx(c * 5.0).epsilon(1e-14));
    CHECK(s.head == doctest::Approx(5.0 + c * c / (2.0 * 9.81)).epsilon(1e-14));
  }

  TEST_CASE("small amplitude matches linear theory") {
    for (const WaveParameters& p : {finite_params(0.01, 0.3), finite_params(0.01, 1.0), deep_params(0.01)}) {
      const FlowState s = solve(p);
      const double c_lin = linear_phase_speed(p);
      CHECK(std::abs(s.wave_speed - c_lin) / c_lin < 1e-3);
      CHECK(s.surface_coeffs[1] == doctest::Approx(p.height() / 2.0).epsilon(2e-2));
    }
  }

  TEST_CASE("amplitude dispersion follows the second-order expansion") {
    for (double depth_ratio : {0.3, 1.0}) {
      const double d = depth_ratio * 10.0;
      const double c0 = dispersion_speed(9.81, 10.0, d);
      for (double ratio : {0.01, 0.02}) {
        const FlowState s = solve(finite_params(ratio, depth_ratio));
        const double predicted = stokes_speed(9.81, 10.0, d, ratio * 10.0 / 2.0) - c0;
        const double measured = s.wave_speed - c0;
        CHECK(measured > 0.0);
        CHECK(std::abs(measured - predicted) < 0.05 * predicted);
      }
    }
  }

  TEST_CASE("converges at moderate steepness") {
    const FlowState s = solve(finite_params(0.05));
    SolverSettings defaults;
    CHECK(s.residual_norm < defaults.newton_tol);
    CHECK(s.newton_iterations > 0);
    CHECK(s.surface_coeffs[0] == 0.0);
    // Height condition: crest minus trough elevation.
    double crest = 0.0, trough = 0.0;
    for (std::size_t j = 1; j < s.surface_coeffs.size(); ++j) {
      crest += s.surface_coeffs[j];
      trough += (j % 2 ? -1.0 : 1.0) * s.surface_coeffs[j];
    }
    CHECK(crest - trough == doctest::Approx(0.5).epsilon(1e-12));
    const ResidualReport r = residual(s).nondimensional(s.params);
    CHECK(r.kinematic_max < 1e-12);
    CHECK(r.bernoulli_max < 1e-12);
    CHECK(r.bed_max < 1e-12);
  }

  TEST_CASE("continuation gives increasing speed") {
    const WaveParameters p = finite_params(0.0);
    const auto states = continuation_sweep(p, {0.1, 0.3, 0.5, 0.7}, {});
    REQUIRE(states.size() == 4);
    for (std::size_t i = 1; i < states.size(); ++i) CHECK(states[i].wave_speed > states[i - 1].wave_speed);

    const FlowState step = continue_to(states[1], 0.5);
    CHECK(step.wave_speed == doctest::Approx(states[2].wave_speed).epsilon(1e-10));

    CHECK_THROWS_AS(continuation_sweep(p, {0.3, 0.2}, {}), Error);
  }

  TEST_CASE("too steep for one step fails cleanly") {
    SolverSettings one;
    one.continuation_steps = 1;
    one.max_newton_iters = 20;
    try {
      solve(finite_params(0.2), one);
      FAIL("expected failure");
    } catch (const ConvergenceError& e) {
      CHECK((e.kind() == ErrorKind::NoConvergence || e.kind() == ErrorKind::SteepnessLimit));
    }
  }

  TEST_CASE("opposing branch") {
    SolverSettings s;
    s.branch = Branch::Opposing;
    const WaveParameters p = finite_params(0.03, 0.3, 5.0);
    const FlowState st = solve(p, s);
    CHECK(st.wave_speed < p.current());
    CHECK(st.relative_current() > 0.0);
    CHECK(st.residual_norm < 1e-10);

    CHECK_THROWS_AS(solve(deep_params(0.03), s), Error);
  }

  TEST_CASE("current shifts the speed") {
    const FlowState a = solve(finite_params(0.04, 0.3, 0.0));
    const FlowState b = solve(finite_params(0.04, 0.3, 1.5));
    CHECK(b.wave_speed - a.wave_speed == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(b.relative_current() == doctest::Approx(a.relative_current()).epsilon(1e-9));
  }

  TEST_CASE("settings validation") {
    SolverSettings s;
    s.newton_tol = 0.0;
    CHECK_THROWS_AS(s.validate(), Error);
    s = {};
    s.continuation_steps = 0;
    CHECK_THROWS_AS(s.validate(), Error);
  }
}

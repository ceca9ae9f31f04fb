#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wavepressure/model.hpp"

using namespace wavepressure;

namespace {

ErrorKind kind_of(const ParameterSet& raw) {
  try {
    WaveParameters::validate(raw);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected rejection");
  return ErrorKind::Io;
}

ParameterSet base() {
  ParameterSet raw;
  raw.wavelength = 10.0;
  raw.depth = 5.0;
  return raw;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("defaults") {
    const WaveParameters p = WaveParameters::validate(base());
    CHECK(p.density() == 1000.0);
    CHECK(p.gravity() == 9.81);
    CHECK(p.atmospheric_pressure() == 101325.0);
    CHECK(p.modes() == 32);
    CHECK(p.surface_nodes() == 64);
    CHECK(p.wavenumber() == doctest::Approx(2.0 * kPi / 10.0));
  }

  TEST_CASE("rejections") {
    ParameterSet r = base();
    r.wavelength = 0.0;
    CHECK(kind_of(r) == ErrorKind::NonPositive);

    r = base();
    r.density = -1.0;
    CHECK(kind_of(r) == ErrorKind::NonPositive);

    r = base();
    r.modes = 0;
    CHECK(kind_of(r) == ErrorKind::NonPositive);

    r = base();
    r.height = -0.1;
    CHECK(kind_of(r) == ErrorKind::NegativeHeight);

    r = base();
    r.height = 5.0;
    CHECK(kind_of(r) == ErrorKind::HeightExceedsDepth);

    r = base();
    r.depth.reset();
    r.current = 0.5;
    CHECK(kind_of(r) == ErrorKind::DeepWithCurrent);

    r = base();
    r.surface_nodes = r.modes;
    CHECK(kind_of(r) == ErrorKind::InvalidSettings);

    r = base();
    r.height = 0.5;
    r.flat_speed = 2.0;
    CHECK(kind_of(r) == ErrorKind::InvalidSettings);

    r = base();
    r.current = std::nan("");
    CHECK(kind_of(r) == ErrorKind::TypeMismatch);
  }

  TEST_CASE("deep water has no depth") {
    ParameterSet r = base();
    r.depth.reset();
    const WaveParameters p = WaveParameters::validate(r);
    CHECK(p.is_deep());
    CHECK_THROWS_AS(p.depth(), Error);
  }

  TEST_CASE("validate is idempotent and with_height revalidates") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      ParameterSet r;
      r.wavelength = 1.0 + 99.0 * u(rng);
      r.depth = r.wavelength * (0.05 + u(rng));
      r.current = 4.0 * u(rng) - 2.0;
      r.height = 0.5 * *r.depth * u(rng);
      r.density = 900.0 + 200.0 * u(rng);
      r.modes = 4 + static_cast<int>(40 * u(rng));
      const WaveParameters once = WaveParameters::validate(r);
      const WaveParameters twice = WaveParameters::validate(once.raw());
      CHECK(once == twice);
    }
    const WaveParameters p = WaveParameters::validate(base());
    CHECK_THROWS_AS(p.with_height(6.0), Error);
    CHECK(p.with_height(1.0).height() == 1.0);
  }

  TEST_CASE("scale round trip") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      ParameterSet r;
      r.wavelength = 0.5 + 200.0 * u(rng);
      if (trial % 3 == 0) {
        r.depth.reset();
      } else {
        r.depth = r.wavelength * (0.05 + 2.0 * u(rng));
        r.current = 6.0 * u(rng) - 3.0;
      }
      r.height = 0.05 * r.wavelength * u(rng);
      r.gravity = 1.0 + 20.0 * u(rng);
      r.density = 500.0 + 1000.0 * u(rng);
      r.atmospheric_pressure = 1e5 * u(rng);
      const WaveParameters p = WaveParameters::validate(r);
      const ScaledParameters s = scale(p);
      CHECK(s.wavenumber == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(s.wavelength == doctest::Approx(2.0 * kPi).epsilon(1e-14));
      const WaveParameters back = s.unscale();
      auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
      CHECK(rel(back.wavelength(), p.wavelength()) < 1e-14);
      CHECK(rel(back.height() + 1.0, p.height() + 1.0) < 1e-14);
      CHECK(rel(back.gravity(), p.gravity()) < 1e-14);
      CHECK(rel(back.density(), p.density()) < 1e-14);
      CHECK(std::abs(back.current() - p.current()) < 1e-14 * (1.0 + std::abs(p.current())));
      CHECK(std::abs(back.atmospheric_pressure() - p.atmospheric_pressure()) <
            1e-14 * (1.0 + p.atmospheric_pressure()));
      CHECK(back.is_deep() == p.is_deep());
      if (!p.is_deep()) CHECK(rel(back.depth(), p.depth()) < 1e-14);
    }
  }

  TEST_CASE("flow transformations") {
    FlowState s{WaveParameters::validate(base())};
    s.wave_speed = 3.0;
    s.surface_coeffs = {0.0, 0.1, 0.01};
    s.stream_coeffs = {-0.2, 0.03};
    s.flux = 10.0;
    s.head = 5.4;

    const FlowState g = galilean_shift(s, 0.75);
    CHECK(g.params.current() == 0.75);
    CHECK(g.wave_speed == 3.75);
    CHECK(g.relative_current() == s.relative_current());
    CHECK(g.stream_coeffs == s.stream_coeffs);

    const FlowState r = reverse_relative_flow(s);
    CHECK(r.relative_current() == -s.relative_current());
    CHECK(r.stream_coeffs[0] == 0.2);
    CHECK(r.flux == -10.0);
    CHECK(r.head == s.head);
    CHECK(r.surface_coeffs == s.surface_coeffs);
  }

  TEST_CASE("error text carries the kind") {
    const Error e(ErrorKind::UnknownKey, "bogus");
    CHECK(std::string(e.what()).find("UnknownKey") != std::string::npos);
    CHECK(e.kind() == ErrorKind::UnknownKey);
  }
}

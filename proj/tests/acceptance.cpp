// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "wavepressure/config.hpp"
#include "wavepressure/fields.hpp"
#include "wavepressure/io.hpp"
#include "wavepressure/solver.hpp"
#include "wavepressure/verify.hpp"

using namespace wavepressure;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("criterion %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

constexpr double kL = 10.0;

WaveParameters finite(double h_ratio, double d_ratio, double current, int modes = 32) {
  ParameterSet raw;
  raw.wavelength = kL;
  raw.depth = d_ratio * kL;
  raw.current = current;
  raw.height = h_ratio * kL;
  raw.modes = modes;
  return WaveParameters::validate(raw);
}

WaveParameters deep(double h_ratio, int modes = 32) {
  ParameterSet raw;
  raw.wavelength = kL;
  raw.height = h_ratio * kL;
  raw.modes = modes;
  return WaveParameters::validate(raw);
}

/// k = ratio * c_lin for the given depth.
double current_for(double k_ratio, double d_ratio) { return k_ratio * linear_phase_speed(finite(0.0, d_ratio, 0.0)); }

/// Pressure from integrating the vertical momentum balance down from the
/// surface: P_y = -rho g + rho (psi_y psi_xx - psi_x psi_xy).
double pressure_by_quadrature(const FieldEvaluator& f, double x, double y) {
  const FlowState& s = f.state();
  const double rho = s.params.density();
  const double g = s.params.gravity();
  const double eta = f.surface(x);
  auto integrand = [&](double t) {
    const StreamJet j = f.stream_jet(x, t);
    return rho * g - rho * (j.psi_y * j.psi_xx - j.psi_x * j.psi_xy);
  };
  return s.params.atmospheric_pressure() + boost::math::quadrature::gauss<double, 40>::integrate(integrand, y, eta);
}

}  // namespace

int main() {
  report(1, "degenerate current k = c", [] {
    const auto t0 = Clock::now();
    const RunConfig cfg = parse_config("L = 10\ndepth = 5\ncurrent = 2\nspeed = 2\n");
    const FlowState s = solve(cfg.params(), cfg.solver);
    const FieldGrid grid = sample_grid(s, 65, 33, Region::FullPeriod);
    const double rho_g = s.params.density() * s.params.gravity();
    const double d = s.params.depth();
    double p_max = 0.0, eta_max = 0.0;
    for (const auto& smp : grid.samples) p_max = std::max(p_max, std::abs(smp.dynamic_pressure));
    for (int i = 0; i < grid.nx; ++i) eta_max = std::max(eta_max, std::abs(surface_at(s, grid.column_x[i])));
    VerifyPlan plan;
    plan.nx = 65;
    plan.ny = 33;
    const VerificationReport r = verify_state(s, plan);
    const double elapsed = seconds_since(t0);
    Outcome o;
    o.pass = p_max < 1e-10 * rho_g * d && eta_max < 1e-12 * kL && std::abs(s.flux) < 1e-12 * d &&
             std::abs(s.head - d) < 1e-10 * d && r.degenerate && r.satisfied() && elapsed < 1.0;
    o.detail = "max|p|/(rho g d) " + fmt("%.2e", p_max / (rho_g * d)) + ", max|eta|/L " + fmt("%.2e", eta_max / kL) +
               ", m " + fmt("%.2e", s.flux) + ", |Q-d|/d " + fmt("%.2e", std::abs(s.head - d) / d) + ", " +
               fmt("%.3f", elapsed) + " s";
    return o;
  });

  report(2, "extrema placement, finite depth (18 cases, 129x65)", [] {
    const auto t0 = Clock::now();
    int passed = 0, total = 0;
    double worst = INFINITY;
    std::string first_bad;
    for (double d_ratio : {0.3, 1.0}) {
      for (double k_ratio : {-0.3, 0.0, 0.3}) {
        const std::vector<double> heights{0.02 * kL, 0.05 * kL, 0.08 * kL};
        const auto states =
            continuation_sweep(finite(0.0, d_ratio, current_for(k_ratio, d_ratio)), heights, SolverSettings{});
        for (const FlowState& s : states) {
          ++total;
          const FieldGrid grid = sample_grid(s, 129, 65, Region::HalfPeriod);
          const ExtremaReport e = locate_extrema(grid, s);
          const double margin = e.margin / scale(s.params).pressure_scale;
          worst = std::min(worst, margin);
          if (e.crest_is_max && e.trough_is_min && e.margin > 0.0) {
            ++passed;
          } else if (first_bad.empty()) {
            first_bad = " first failure H/L " + fmt("%.2f", s.params.height() / kL) + " k/c " + fmt("%.1f", k_ratio) +
                        " d/L " + fmt("%.1f", d_ratio);
          }
        }
      }
    }
    const double elapsed = seconds_since(t0);
    return Outcome{passed == total && elapsed < 30.0,
                   std::to_string(passed) + "/" + std::to_string(total) + " cases, min interior margin " +
                       fmt("%.2e", worst) + " (nondim), " + fmt("%.2f", elapsed) + " s" + first_bad};
  });

  report(3, "extrema placement, deep water, tail bound", [] {
    const auto states = continuation_sweep(deep(0.0), {0.02 * kL, 0.05 * kL, 0.08 * kL}, SolverSettings{});
    int passed = 0;
    double worst_tail = 0.0;
    for (const FlowState& s : states) {
      const FieldGrid grid = sample_grid(s, 129, 65, Region::HalfPeriod);
      const ExtremaReport e = locate_extrema(grid, s);
      const double rgh = s.params.density() * s.params.gravity() * s.params.height();
      double tail = 0.0;
      for (int i = 0; i <= 128; ++i) tail = std::max(tail, std::abs(dynamic_pressure_at(s, i * kL / 128, -3 * kL)));
      worst_tail = std::max(worst_tail, tail / rgh);
      if (e.crest_is_max && e.trough_is_min && e.margin > 0.0 && tail < 1e-6 * rgh) ++passed;
    }
    return Outcome{passed == 3, std::to_string(passed) + "/3 heights, max |p(x,-3L)|/(rho g H) " +
                                    fmt("%.2e", worst_tail)};
  });

  report(4, "sign invariants (u-c, v, deep P_x) with margin 1e-9", [] {
    std::vector<FlowState> states;
    for (double d_ratio : {0.3, 1.0}) {
      for (double k_ratio : {-0.3, 0.0, 0.3}) {
        states.push_back(solve(finite(0.05, d_ratio, current_for(k_ratio, d_ratio))));
      }
    }
    // k > c: reverse the moving-frame flow and shift to c = 1.
    const FlowState reversed = reverse_relative_flow(states[1]);
    states.push_back(galilean_shift(reversed, 1.0 - reversed.wave_speed));
    states.push_back(solve(deep(0.05)));
    states.push_back(solve(deep(0.08)));

    int checks = 0, passed = 0;
    double worst = INFINITY;
    std::string bad;
    for (const FlowState& s : states) {
      const FieldGrid grid = sample_grid(s, 129, 65, Region::HalfPeriod);
      for (const CheckResult& c : check_sign_invariants(s, grid).checks) {
        ++checks;
        if (c.verdict == Verdict::Pass) {
          ++passed;
        } else if (bad.empty()) {
          bad = " first non-pass: " + c.name + " (" + std::string(to_string(c.verdict)) + ")";
        }
        if (c.name.find("zero") == std::string::npos) worst = std::min(worst, c.worst_margin);
      }
    }
    return Outcome{passed == checks, std::to_string(passed) + "/" + std::to_string(checks) + " checks over " +
                                         std::to_string(states.size()) + " states, min strict margin " +
                                         fmt("%.2e", worst) + bad};
  });

  report(5, "linear oracle at H/L = 0.01", [] {
    double worst_c = 0.0, worst_p = 0.0;
    for (int which = 0; which < 3; ++which) {
      const WaveParameters p = which == 0 ? finite(0.01, 0.3, 0.0) : which == 1 ? finite(0.01, 1.0, 0.0) : deep(0.01);
      const FlowState s = solve(p);
      const double kappa = p.wavenumber();
      const double g = p.gravity();
      const double c_lin =
          p.is_deep() ? std::sqrt(g / kappa) : std::sqrt(g / kappa * std::tanh(kappa * p.depth()));
      worst_c = std::max(worst_c, std::abs(s.wave_speed - c_lin) / c_lin);
      const double a = p.height() / 2.0;
      const double rho_g = p.density() * g;
      const FieldGrid grid = sample_grid(s, 129, 65, Region::HalfPeriod);
      for (const auto& smp : grid.samples) {
        const double vertical = p.is_deep() ? std::exp(kappa * smp.y)
                                            : std::cosh(kappa * (smp.y + p.depth())) / std::cosh(kappa * p.depth());
        const double p_lin = rho_g * a * std::cos(kappa * smp.x) * vertical;
        worst_p = std::max(worst_p, std::abs(smp.dynamic_pressure - p_lin) / (rho_g * p.height() / 2.0));
      }
    }
    return Outcome{worst_c < 1e-3 && worst_p < 5e-2,
                   "max |c-c_lin|/c_lin " + fmt("%.2e", worst_c) + ", max |p-p_lin|/(rho g H/2) " +
                       fmt("%.2e", worst_p) + " (d/L 0.3, 1.0, deep)"};
  });

  report(6, "elliptic identity, residual ratio under h -> h/2 in [3,5]", [] {
    struct Case {
      const char* name;
      WaveParameters params;
    };
    const std::vector<Case> cases{{"H/L .05 k=0 d/L .3", finite(0.05, 0.3, 0.0)},
                                  {"H/L .08 k=.3c d/L 1", finite(0.08, 1.0, current_for(0.3, 1.0))},
                                  {"H/L .05 k=-.3c d/L .3", finite(0.05, 0.3, current_for(-0.3, 0.3))},
                                  {"deep H/L .05", deep(0.05)}};
    bool ok = true;
    std::string detail;
    for (const Case& c : cases) {
      const FlowState s = solve(c.params);
      const FieldGrid grid = sample_grid(s, 65, 33, Region::HalfPeriod);
      const auto coarse = check_elliptic_identity(s, grid, kL / 100);
      const auto fine = check_elliptic_identity(s, grid, kL / 200);
      const double ratio = coarse.residual_max / fine.residual_max;
      ok = ok && ratio >= 3.0 && ratio <= 5.0;
      detail += std::string(detail.empty() ? "" : "; ") + c.name + " " + fmt("%.2f", ratio);
    }
    return Outcome{ok, detail};
  });

  report(7, "Bernoulli constancy at 1000 random interior points", [] {
    double worst = 0.0;
    for (const WaveParameters& p : {finite(0.08, 0.3, current_for(0.3, 0.3)), deep(0.08)}) {
      const FlowState s = solve(p);
      const FieldEvaluator f(s);
      const double g = p.gravity();
      const double d = p.is_deep() ? 0.0 : p.depth();
      const double floor = p.is_deep() ? -kL : -d;
      std::mt19937 rng(2024);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (int n = 0; n < 1000; ++n) {
        const double x = unit(rng) * kL;
        const double eta = f.surface(x);
        const double y = floor + unit(rng) * (eta - floor);
        const StreamJet j = f.stream_jet(x, y);
        const double gauge = pressure_by_quadrature(f, x, y) - p.atmospheric_pressure();
        const double b = j.speed_squared() / (2 * g) + y + d + gauge / (p.density() * g);
        worst = std::max(worst, std::abs(b - s.head) * p.wavenumber());
      }
    }
    return Outcome{worst < 1e-10, "max nondimensional deviation " + fmt("%.2e", worst) +
                                      " (pressure from momentum quadrature; finite H/L .08 k=.3c, deep H/L .08)"};
  });

  report(8, "mean current depth invariance, five levels below the trough", [] {
    double worst = 0.0;
    bool ok = true;
    for (const WaveParameters& p : {finite(0.05, 0.3, current_for(0.3, 0.3)), finite(0.08, 1.0, 0.0), deep(0.05)}) {
      const FlowState s = solve(p);
      const double trough = surface_at(s, kL / 2);
      const double floor = p.is_deep() ? -kL : -p.depth();
      const double tol = 1e-10 * std::max(s.wave_speed, 1.0);
      for (int i = 0; i < 5; ++i) {
        const double y0 = trough - (i + 0.5) / 5.0 * (trough - floor);
        const double dev = std::abs(mean_current(s, y0) - p.current());
        worst = std::max(worst, dev / tol);
        ok = ok && dev < tol;
      }
    }
    return Outcome{ok, "max |mean - k| / (1e-10 max(c,1)) " + fmt("%.3f", worst)};
  });

  report(9, "Galilean consistency of verdicts", [] {
    const FlowState s = solve(finite(0.05, 0.3, 0.0));
    const std::string base = verdict_fingerprint(verify_state(s));
    const std::string shifted = verdict_fingerprint(verify_state(galilean_shift(s, 1.5)));
    const FlowState direct = solve(finite(0.05, 0.3, 1.5));
    const std::string resolved = verdict_fingerprint(verify_state(direct));
    const bool ok = base == shifted && base == resolved;
    return Outcome{ok, std::string("shifted copy ") + (base == shifted ? "identical" : "differs") +
                           ", re-solved with k = 1.5 " + (base == resolved ? "identical" : "differs")};
  });

  report(10, "spectral convergence N 16 -> 32 at H/L = 0.05", [] {
    bool ok = true;
    std::string detail;
    for (int which = 0; which < 2; ++which) {
      const auto params = [&](int n) { return which == 0 ? finite(0.05, 0.3, 0.0, n) : deep(0.05, n); };
      const FlowState s16 = solve(params(16));
      const FlowState s32 = solve(params(32));
      const double r16 = residual(s16).nondimensional(s16.params).bernoulli_max;
      const double r32 = residual(s32).nondimensional(s32.params).bernoulli_max;
      const double ratio = r16 / std::max(r32, 1e-300);
      ok = ok && ratio >= 10.0;
      detail += std::string(which ? "; deep " : "finite ") + fmt("%.2e", r16) + " -> " + fmt("%.2e", r32) + " (" +
                fmt("%.0fx", ratio) + ")";
    }
    return Outcome{ok, detail};
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

#include "wavepressure/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wavepressure/fields.hpp"

namespace wavepressure {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Degenerate: return "degenerate";
    case Verdict::Skipped: return "skipped";
  }
  return "unknown";
}

std::string_view to_string(BoundaryPath path) {
  switch (path) {
    case BoundaryPath::CrestVertical: return "crest_vertical";
    case BoundaryPath::Bed: return "bed";
    case BoundaryPath::TroughVertical: return "trough_vertical";
    case BoundaryPath::Surface: return "surface";
    case BoundaryPath::CrestTail: return "crest_tail";
    case BoundaryPath::TroughTail: return "trough_tail";
  }
  return "unknown";
}

bool InvariantReport::satisfied() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.satisfied(); });
}

const CheckResult* InvariantReport::find(std::string_view name) const noexcept {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void InvariantReport::append(const InvariantReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool MonotonicityReport::satisfied() const noexcept {
  if (degenerate) return true;
  return std::none_of(paths.begin(), paths.end(), [](const PathResult& p) { return p.violation.has_value(); });
}

namespace {

struct Scales {
  double velocity;
  double pressure;
  double gradient;
  double length;
};

Scales scales_of(const WaveParameters& p) {
  const ScaledParameters s = scale(p);
  return {s.velocity_scale, s.pressure_scale, p.density() * p.gravity(), s.length_scale};
}

// Accumulates signed margins of a strict inequality.
class StrictCheck {
 public:
  StrictCheck(std::string name, double margin) : margin_(margin) {
    result_.name = std::move(name);
    result_.worst_margin = std::numeric_limits<double>::infinity();
  }

  void add(double value, Location where) {
    ++result_.samples;
    if (value < result_.worst_margin) {
      result_.worst_margin = value;
      result_.worst_location = where;
    }
    if (value < -margin_) {
      ++failures_;
    } else if (value <= margin_) {
      ++result_.inconclusive;
    }
  }

  CheckResult finish() {
    if (result_.samples == 0) {
      result_.verdict = Verdict::Skipped;
      result_.worst_margin = 0.0;
    } else if (failures_ > 0) {
      result_.verdict = Verdict::Fail;
    } else if (result_.inconclusive > 0) {
      result_.verdict = Verdict::Inconclusive;
    } else {
      result_.verdict = Verdict::Pass;
    }
    result_.metrics["failures"] = failures_;
    return result_;
  }

  CheckResult& result() { return result_; }

 private:
  CheckResult result_;
  double margin_;
  int failures_ = 0;
};

// |value| <= tolerance, margin reported as tolerance - |value|.
class ZeroCheck {
 public:
  ZeroCheck(std::string name, double tolerance) : tolerance_(tolerance) {
    result_.name = std::move(name);
    result_.worst_margin = std::numeric_limits<double>::infinity();
  }

  void add(double value, Location where) {
    ++result_.samples;
    const double m = tolerance_ - std::abs(value);
    if (m < result_.worst_margin) {
      result_.worst_margin = m;
      result_.worst_location = where;
    }
    if (m < 0.0) ++failures_;
  }

  CheckResult finish() {
    if (result_.samples == 0) {
      result_.verdict = Verdict::Skipped;
      result_.worst_margin = 0.0;
    } else {
      result_.verdict = failures_ > 0 ? Verdict::Fail : Verdict::Pass;
    }
    return result_;
  }

 private:
  CheckResult result_;
  double tolerance_;
  int failures_ = 0;
};

CheckResult verdict_only(std::string name, Verdict verdict, std::string note) {
  CheckResult r;
  r.name = std::move(name);
  r.verdict = verdict;
  r.note = std::move(note);
  return r;
}

double resolvable_floor(const WaveParameters& p, const VerifyOptions& options) {
  return p.is_deep() ? -options.resolvable_wavelengths * p.wavelength() : -p.depth();
}

void require_region(const FieldGrid& grid, Region region, const char* what) {
  if (grid.region != region) throw Error(ErrorKind::InvalidSettings, what);
}

double central_x(const FieldEvaluator& eval, double x, double y, double h, bool total) {
  if (total) return (eval.pressure(x + h, y) - eval.pressure(x - h, y)) / (2.0 * h);
  return (eval.dynamic_pressure(x + h, y) - eval.dynamic_pressure(x - h, y)) / (2.0 * h);
}

double central_y(const FieldEvaluator& eval, double x, double y, double h) {
  return (eval.dynamic_pressure(x, y + h) - eval.dynamic_pressure(x, y - h)) / (2.0 * h);
}

double pressure_gradient_step(const WaveParameters& p) { return 1e-4 * p.wavelength(); }

}  // namespace

bool is_degenerate_current(const FlowState& state) {
  const WaveParameters& p = state.params;
  return std::abs(state.relative_current()) < 1e-9 * std::sqrt(p.gravity() * p.wavelength());
}

ExtremaReport locate_extrema(const FieldGrid& grid, const FlowState& state, const VerifyOptions& options) {
  require_region(grid, Region::HalfPeriod, "extrema need a half-period grid");
  const Scales sc = scales_of(state.params);
  ExtremaReport r;
  r.max_value = -std::numeric_limits<double>::infinity();
  r.min_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const FieldSample& s = grid.at(i, j);
      if (s.dynamic_pressure > r.max_value) {
        r.max_value = s.dynamic_pressure;
        r.max_column = i;
        r.max_level = j;
        r.max_location = {grid.column_x[i], s.y};
      }
      if (s.dynamic_pressure < r.min_value) {
        r.min_value = s.dynamic_pressure;
        r.min_column = i;
        r.min_level = j;
        r.min_location = {grid.column_x[i], s.y};
      }
    }
  }
  if ((r.max_value - r.min_value) / sc.pressure < options.degenerate_tolerance) {
    throw Error(ErrorKind::DegenerateField, "dynamic pressure is constant on the grid");
  }
  const int top = grid.ny - 1;
  r.crest_is_max = r.max_column == 0 && r.max_level == top;
  r.trough_is_min = r.min_column == grid.nx - 1 && r.min_level == top;
  r.max_margin = std::numeric_limits<double>::infinity();
  r.min_margin = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < grid.nx; ++i) {
    for (int j = 1; j + 1 < grid.ny; ++j) {
      const double p = grid.at(i, j).dynamic_pressure;
      r.max_margin = std::min(r.max_margin, r.max_value - p);
      r.min_margin = std::min(r.min_margin, p - r.min_value);
    }
  }
  r.margin = std::min(r.max_margin, r.min_margin);
  return r;
}

InvariantReport check_sign_invariants(const FlowState& state, const FieldGrid& grid, const VerifyOptions& options) {
  require_region(grid, Region::HalfPeriod, "sign invariants need a half-period grid");
  const WaveParameters& params = state.params;
  const Scales sc = scales_of(params);
  const double c = state.wave_speed;
  // Sign of u - c: that of k - c; deep water u < c.
  const double cbar = state.relative_current();
  const double u_sign = params.is_deep() ? -1.0 : (cbar > 0.0 ? 1.0 : -1.0);
  const double v_sign = -u_sign;
  const double floor = resolvable_floor(params, options);
  const bool deep = params.is_deep();

  InvariantReport report;
  StrictCheck u_check(u_sign > 0 ? "u_greater_than_c" : "u_less_than_c", options.strict_margin);
  StrictCheck v_check(v_sign > 0 ? "v_positive_open_half_period" : "v_negative_open_half_period", options.strict_margin);
  ZeroCheck v_zero("v_zero_crest_trough_lines", options.zero_tolerance);

  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const FieldSample& s = grid.at(i, j);
      const Location loc{grid.column_x[i], s.y};
      if (deep && s.y < floor) continue;
      u_check.add(u_sign * (s.u - c) / sc.velocity, loc);
      if (i == 0 || i == grid.nx - 1) {
        v_zero.add(s.v / sc.velocity, loc);
      } else if (j > 0) {
        v_check.add(v_sign * s.v / sc.velocity, loc);
      }
    }
  }
  report.checks.push_back(u_check.finish());
  if (state.is_flat()) {
    report.checks.push_back(verdict_only(v_check.result().name, Verdict::Degenerate, "flat state: v vanishes identically"));
  } else {
    CheckResult v = v_check.finish();
    if (!deep && cbar < 0.0) v.note = "sign inferred from v = (u - c) eta_x with eta_x < 0";
    report.checks.push_back(std::move(v));
  }
  report.checks.push_back(v_zero.finish());

  if (deep) {
    StrictCheck px("pressure_x_negative_open_half_period", options.strict_margin);
    ZeroCheck px_zero("pressure_x_zero_crest_trough_lines", options.strict_margin);
    const FieldEvaluator eval(state, false);
    const double h = pressure_gradient_step(params);
    for (int i = 0; i < grid.nx; ++i) {
      for (int j = 1; j < grid.ny; ++j) {
        const FieldSample& s = grid.at(i, j);
        if (s.y < floor) continue;
        const double value = central_x(eval, grid.column_x[i], s.y, h, true) / sc.gradient;
        const Location loc{grid.column_x[i], s.y};
        if (i == 0 || i == grid.nx - 1) {
          px_zero.add(value, loc);
        } else {
          px.add(-value, loc);
        }
      }
    }
    if (state.is_flat()) {
      report.checks.push_back(verdict_only("pressure_x_negative_open_half_period", Verdict::Degenerate,
                                           "flat state: pressure is hydrostatic"));
    } else {
      report.checks.push_back(px.finish());
    }
    report.checks.push_back(px_zero.finish());
  }
  if (deep) {
    for (auto& c : report.checks) c.metrics["checked_above_y"] = floor;
  }
  return report;
}

namespace {

PathResult scan_decreasing(BoundaryPath path, std::string direction, const std::vector<double>& values,
                           const std::vector<Location>& where, double scale, double margin) {
  PathResult r;
  r.path = path;
  r.direction = std::move(direction);
  r.min_step = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    const double step = (values[k] - values[k + 1]) / scale;
    r.min_step = std::min(r.min_step, step);
    if (step < -margin) {
      if (!r.violation) r.violation = where[k + 1];
    } else if (step <= margin) {
      ++r.inconclusive_steps;
    }
  }
  r.strictly_monotone = !r.violation && r.inconclusive_steps == 0;
  return r;
}

}  // namespace

MonotonicityReport check_monotonicity(const FlowState& state, int npath, const VerifyOptions& options) {
  if (npath < 16) throw Error(ErrorKind::InvalidSettings, "npath must be at least 16");
  const WaveParameters& params = state.params;
  const Scales sc = scales_of(params);
  const double L = params.wavelength();
  const FieldEvaluator eval(state);
  const double floor = resolvable_floor(params, options);
  const double crest = eval.surface(0.0);
  const double trough = eval.surface(0.5 * L);

  auto p_at = [&](double x, double y) {
    try {
      return eval.dynamic_pressure(x, y);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::OutOfDomain) throw Error(ErrorKind::PathOutOfDomain, e.what());
      throw;
    }
  };

  struct Path {
    BoundaryPath kind;
    std::string direction;
    std::vector<double> values;
    std::vector<Location> where;
  };
  std::vector<Path> paths;
  auto add_path = [&](BoundaryPath kind, std::string direction, auto point) {
    Path path{kind, std::move(direction), {}, {}};
    for (int k = 0; k < npath; ++k) {
      const double t = static_cast<double>(k) / (npath - 1);
      const Location loc = point(t);
      path.values.push_back(p_at(loc.x, loc.y));
      path.where.push_back(loc);
    }
    paths.push_back(std::move(path));
  };

  add_path(BoundaryPath::CrestVertical, "downward from the crest", [&](double t) {
    return Location{0.0, crest + t * (floor - crest)};
  });
  if (!params.is_deep()) {
    add_path(BoundaryPath::Bed, "along the bed from x = 0 to x = L/2", [&](double t) {
      return Location{0.5 * L * t, floor};
    });
  }
  add_path(BoundaryPath::TroughVertical, "upward towards the trough", [&](double t) {
    return Location{0.5 * L, floor + t * (trough - floor)};
  });
  add_path(BoundaryPath::Surface, "along the surface from crest to trough", [&](double t) {
    const double x = 0.5 * L * t;
    return Location{x, eval.surface(x)};
  });

  MonotonicityReport report;
  double spread = 0.0;
  for (const auto& p : paths) {
    for (double v : p.values) spread = std::max(spread, std::abs(v) / sc.pressure);
  }
  report.degenerate = spread < options.degenerate_tolerance;

  for (const auto& p : paths) {
    if (report.degenerate) {
      PathResult r;
      r.path = p.kind;
      r.direction = "constant";
      report.paths.push_back(r);
      continue;
    }
    report.paths.push_back(scan_decreasing(p.kind, p.direction, p.values, p.where, sc.pressure, options.strict_margin));
  }

  if (params.is_deep()) {
    const double y_min = deep_truncation_level(params);
    const double bound = options.tail_factor * params.density() * params.gravity() * params.height();
    for (auto [kind, x] : {std::pair{BoundaryPath::CrestTail, 0.0}, std::pair{BoundaryPath::TroughTail, 0.5 * L}}) {
      PathResult r;
      r.path = kind;
      r.direction = "|p(x, -3L)| below tail bound";
      const double p = std::abs(p_at(x, y_min));
      r.min_step = (bound - p) / sc.pressure;
      if (report.degenerate) {
        r.direction = "constant";
      } else {
        r.strictly_monotone = p < bound;
        if (!r.strictly_monotone) r.violation = Location{x, y_min};
      }
      report.paths.push_back(r);
    }
  }
  return report;
}

EllipticResidualReport check_elliptic_identity(const FlowState& state, const FieldGrid& grid, double spacing) {
  if (grid.region != Region::HalfPeriod && grid.region != Region::FullPeriod) {
    throw Error(ErrorKind::InvalidSettings, "elliptic identity needs a two-dimensional grid");
  }
  const WaveParameters& params = state.params;
  const double h = spacing > 0.0 ? spacing : params.wavelength() / 100.0;
  const double rho = params.density();
  const Scales sc = scales_of(params);
  const FieldEvaluator eval(state, false);
  const std::optional<double> bed = params.is_deep() ? std::nullopt : std::optional<double>(-params.depth());
  const double floor_gradient = 1e-12 * sc.velocity * sc.velocity;

  EllipticResidualReport report;
  report.spacing = h;
  for (int i = 1; i + 1 < grid.nx; ++i) {
    const double x = grid.column_x[i];
    const double top = std::min({eval.surface(x), eval.surface(x - h), eval.surface(x + h)});
    for (int j = 1; j + 1 < grid.ny; ++j) {
      const double y = grid.at(i, j).y;
      if (y + h > top) continue;
      if (bed && y - h < *bed) continue;
      const StreamJet jet = eval.stream_jet(x, y);
      const double q2 = jet.speed_squared();
      if (q2 < floor_gradient) {
        throw Error(ErrorKind::VanishingGradient, "psi_x^2 + psi_y^2 vanishes in the interior");
      }
      const double px_exact = -rho * (jet.psi_x * jet.psi_xx + jet.psi_y * jet.psi_xy);
      const double py_exact = -rho * (jet.psi_x * jet.psi_xy + jet.psi_y * jet.psi_yy);
      const double alpha = -2.0 * px_exact / (rho * q2);
      const double beta = -2.0 * py_exact / (rho * q2);

      const double p0 = eval.dynamic_pressure(x, y);
      const double pe = eval.dynamic_pressure(x + h, y);
      const double pw = eval.dynamic_pressure(x - h, y);
      const double pn = eval.dynamic_pressure(x, y + h);
      const double ps = eval.dynamic_pressure(x, y - h);
      const double pxx = (pe - 2.0 * p0 + pw) / (h * h);
      const double pyy = (pn - 2.0 * p0 + ps) / (h * h);
      const double px = (pe - pw) / (2.0 * h);
      const double py = (pn - ps) / (2.0 * h);
      const double res = std::abs(pxx + pyy - alpha * px - beta * py);
      ++report.points;
      report.coefficient_max = std::max({report.coefficient_max, std::abs(alpha), std::abs(beta)});
      if (res > report.residual_max) {
        report.residual_max = res;
        report.worst_location = {x, y};
      }
    }
  }
  report.residual_max_scaled = report.residual_max / (rho * params.gravity() * params.wavenumber());
  return report;
}

InvariantReport check_degenerate_current(const FlowState& state, const FieldGrid& grid, const VerifyOptions& options) {
  (void)options;
  if (!is_degenerate_current(state)) {
    throw Error(ErrorKind::NotDegenerate, "current strength differs from the wave speed");
  }
  const WaveParameters& params = state.params;
  const double L = params.wavelength();
  const double rho_g = params.density() * params.gravity();
  const double depth_scale = params.is_deep() ? L : params.depth();
  const double d = params.is_deep() ? 0.0 : params.depth();

  InvariantReport report;
  {
    ZeroCheck flat("surface_flat", 1e-12 * L);
    for (std::size_t j = 1; j < state.surface_coeffs.size(); ++j) flat.add(state.surface_coeffs[j], {});
    report.checks.push_back(flat.finish());
  }
  {
    ZeroCheck m("zero_flux", 1e-10 * std::sqrt(params.gravity() * L) * depth_scale);
    m.add(state.flux, {});
    report.checks.push_back(m.finish());
  }
  {
    ZeroCheck q(params.is_deep() ? "head_zero" : "head_equals_depth", 1e-10 * depth_scale);
    q.add(state.head - d, {});
    report.checks.push_back(q.finish());
  }
  ZeroCheck p("dynamic_pressure_zero", 1e-10 * rho_g * depth_scale);
  ZeroCheck hydro("hydrostatic_pressure", 1e-10 * rho_g * depth_scale);
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const FieldSample& s = grid.at(i, j);
      const Location loc{grid.column_x[i], s.y};
      p.add(s.dynamic_pressure, loc);
      hydro.add(s.pressure - (params.atmospheric_pressure() - rho_g * s.y), loc);
    }
  }
  report.checks.push_back(p.finish());
  report.checks.push_back(hydro.finish());
  return report;
}

InvariantReport check_symmetry(const FlowState& state, const FieldGrid& grid, const VerifyOptions& options) {
  require_region(grid, Region::FullPeriod, "symmetry needs a full-period grid");
  const WaveParameters& params = state.params;
  const Scales sc = scales_of(params);
  const double tol = 1e-10;
  ZeroCheck eta("eta_even", tol);
  ZeroCheck u("u_even", tol);
  ZeroCheck pressure("pressure_even", tol);
  ZeroCheck v("v_odd", tol);
  for (int i = 0; i < grid.nx; ++i) {
    const int m = grid.nx - 1 - i;
    for (int j = 0; j < grid.ny; ++j) {
      const FieldSample& a = grid.at(i, j);
      const FieldSample& b = grid.at(m, j);
      const Location loc{grid.column_x[i], a.y};
      if (j == grid.ny - 1) eta.add((a.y - b.y) / sc.length, loc);
      u.add((a.u - b.u) / sc.velocity, loc);
      const double p_scale = std::max({std::abs(a.pressure), std::abs(b.pressure), sc.pressure});
      pressure.add((a.pressure - b.pressure) / p_scale, loc);
      v.add((a.v + b.v) / sc.velocity, loc);
    }
  }
  InvariantReport report;
  report.checks.push_back(eta.finish());
  report.checks.push_back(u.finish());
  report.checks.push_back(pressure.finish());
  report.checks.push_back(v.finish());

  // Profile shape on a dense periodic sampling of the surface.
  const FieldEvaluator eval(state);
  const int n = std::max(256, 16 * state.modes());
  const double L = params.wavelength();
  if (state.is_flat()) {
    report.checks.push_back(verdict_only("eta_monotone_half_period", Verdict::Degenerate, "flat surface"));
    report.checks.push_back(verdict_only("single_crest_and_trough", Verdict::Degenerate, "flat surface"));
    return report;
  }
  StrictCheck mono("eta_monotone_half_period", options.strict_margin);
  double prev = eval.surface(0.0);
  for (int k = 1; k <= n; ++k) {
    const double x = 0.5 * L * k / n;
    const double cur = eval.surface(x);
    mono.add((prev - cur) / sc.length, {x, cur});
    prev = cur;
  }
  report.checks.push_back(mono.finish());

  std::vector<double> eta_period(2 * n);
  for (int k = 0; k < 2 * n; ++k) eta_period[k] = eval.surface(L * k / (2 * n));
  int maxima = 0;
  int minima = 0;
  for (int k = 0; k < 2 * n; ++k) {
    const double left = eta_period[(k + 2 * n - 1) % (2 * n)];
    const double right = eta_period[(k + 1) % (2 * n)];
    if (eta_period[k] > left && eta_period[k] > right) ++maxima;
    if (eta_period[k] < left && eta_period[k] < right) ++minima;
  }
  CheckResult single;
  single.name = "single_crest_and_trough";
  single.samples = 2 * n;
  single.verdict = (maxima == 1 && minima == 1) ? Verdict::Pass : Verdict::Fail;
  single.metrics["crests"] = maxima;
  single.metrics["troughs"] = minima;
  report.checks.push_back(single);
  return report;
}

InvariantReport check_interior_exclusion(const FlowState& state, const FieldGrid& grid, const VerifyOptions& options) {
  const WaveParameters& params = state.params;
  if (!params.is_deep()) throw Error(ErrorKind::InvalidSettings, "interior exclusion applies to deep water");
  require_region(grid, Region::HalfPeriod, "interior exclusion needs a half-period grid");
  InvariantReport report;
  if (state.is_flat()) {
    report.checks.push_back(verdict_only("pressure_x_at_min_gradient", Verdict::Degenerate, "dynamic pressure vanishes"));
    report.checks.push_back(verdict_only("pressure_x_negative_interior", Verdict::Degenerate, "dynamic pressure vanishes"));
    return report;
  }
  const Scales sc = scales_of(params);
  const FieldEvaluator eval(state, false);
  const double h = pressure_gradient_step(params);
  const double floor = resolvable_floor(params, options);

  StrictCheck interior("pressure_x_negative_interior", options.strict_margin);
  double best_gradient = std::numeric_limits<double>::infinity();
  Location best;
  for (int i = 1; i + 1 < grid.nx; ++i) {
    const double x = grid.column_x[i];
    for (int j = 1; j + 1 < grid.ny; ++j) {
      const double y = grid.at(i, j).y;
      if (y < floor) continue;
      const double gx = central_x(eval, x, y, h, false);
      const double gy = central_y(eval, x, y, h);
      const double norm = std::hypot(gx, gy) / sc.gradient;
      if (norm < best_gradient) {
        best_gradient = norm;
        best = {x, y};
      }
      interior.add(-central_x(eval, x, y, h, true) / sc.gradient, {x, y});
    }
  }
  StrictCheck at_min("pressure_x_at_min_gradient", options.strict_margin);
  const double px = central_x(eval, best.x, best.y, h, true) / sc.gradient;
  at_min.add(-px, best);
  CheckResult r = at_min.finish();
  r.metrics["min_grad_p"] = best_gradient;
  r.metrics["pressure_x"] = px;
  report.checks.push_back(r);
  CheckResult all = interior.finish();
  all.metrics["checked_above_y"] = floor;
  report.checks.push_back(all);
  return report;
}

CheckResult check_mean_current(const FlowState& state, int levels) {
  const WaveParameters& params = state.params;
  const FieldEvaluator eval(state);
  const double trough = eval.surface(0.5 * params.wavelength());
  const double bottom = params.is_deep() ? -params.wavelength() : -params.depth();
  const double tol = 1e-10 * std::max(std::abs(state.wave_speed), 1.0);
  ZeroCheck check("mean_current_depth_invariance", tol);
  for (int l = 0; l < levels; ++l) {
    const double y0 = levels == 1 ? bottom : bottom + (trough - bottom) * l / (levels - 1);
    check.add(mean_current(state, y0) - params.current(), {0.0, y0});
  }
  return check.finish();
}

CheckResult check_flux(const FlowState& state) {
  if (state.params.is_deep()) return verdict_only("flux_quadrature", Verdict::Skipped, "deep water carries no flux");
  const WaveParameters& params = state.params;
  const Scales sc = scales_of(params);
  ZeroCheck check("flux_quadrature", 1e-9);
  const int stations = 8;
  for (int i = 0; i < stations; ++i) {
    const double x = params.wavelength() * i / stations;
    check.add((flux_at(state, x) - state.flux) / (sc.velocity * sc.length), {x, 0.0});
  }
  return check.finish();
}

CheckResult check_residuals(const FlowState& state, double tolerance) {
  const ResidualReport r = residual(state, 4).nondimensional(state.params);
  ZeroCheck check("boundary_residuals", tolerance);
  check.add(r.kinematic_max, {});
  check.add(r.bernoulli_max, {});
  check.add(r.bed_max, {});
  CheckResult out = check.finish();
  out.metrics["kinematic_max"] = r.kinematic_max;
  out.metrics["bernoulli_max"] = r.bernoulli_max;
  out.metrics["bed_max"] = r.bed_max;
  return out;
}

bool VerificationReport::satisfied() const noexcept {
  if (!invariants.satisfied() || !monotonicity.satisfied()) return false;
  if (extrema && !(extrema->crest_is_max && extrema->trough_is_min)) return false;
  return true;
}

std::vector<std::string> VerificationReport::violations() const {
  std::vector<std::string> out;
  for (const auto& c : invariants.checks) {
    if (!c.satisfied()) out.push_back(c.name);
  }
  for (const auto& p : monotonicity.paths) {
    if (p.violation) out.push_back(std::string("monotonicity.") + std::string(to_string(p.path)));
  }
  if (extrema) {
    if (!extrema->crest_is_max) out.push_back("extrema.crest_is_max");
    if (!extrema->trough_is_min) out.push_back("extrema.trough_is_min");
  }
  return out;
}

VerificationReport verify_state(const FlowState& state, const VerifyPlan& plan) {
  VerificationReport report;
  const WaveParameters& params = state.params;
  const VerifyOptions& opt = plan.options;
  report.invariants.checks.push_back(check_residuals(state, plan.residual_tolerance));

  const FieldGrid half = sample_grid(state, plan.nx, plan.ny, Region::HalfPeriod);
  const int full_nx = plan.nx % 2 == 1 ? plan.nx : plan.nx + 1;
  const FieldGrid full = sample_grid(state, full_nx, plan.ny, Region::FullPeriod);

  report.degenerate = is_degenerate_current(state);
  if (report.degenerate) {
    report.notes.push_back("k = c: degenerate pathway, dynamic pressure must vanish identically");
    report.invariants.append(check_degenerate_current(state, half, opt));
    report.monotonicity = check_monotonicity(state, plan.npath, opt);
    report.invariants.checks.push_back(verdict_only("extrema_placement", Verdict::Degenerate, "constant field"));
    report.invariants.checks.push_back(verdict_only("elliptic_identity", Verdict::Degenerate, "psi has no gradient"));
    report.invariants.checks.push_back(check_mean_current(state));
    report.invariants.checks.push_back(check_flux(state));
    return report;
  }

  try {
    report.extrema = locate_extrema(half, state, opt);
    CheckResult placement;
    placement.name = "extrema_placement";
    placement.verdict = report.extrema->crest_is_max && report.extrema->trough_is_min ? Verdict::Pass : Verdict::Fail;
    placement.worst_margin = report.extrema->margin / scale(params).pressure_scale;
    placement.worst_location = report.extrema->max_location;
    placement.samples = half.nx * half.ny;
    if (placement.verdict == Verdict::Pass && !(report.extrema->margin > 0.0)) placement.verdict = Verdict::Inconclusive;
    report.invariants.checks.push_back(placement);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateField) throw;
    report.notes.push_back("dynamic pressure constant on the grid (flat uniform stream)");
    report.invariants.checks.push_back(verdict_only("extrema_placement", Verdict::Degenerate, "constant field"));
  }

  report.invariants.append(check_sign_invariants(state, half, opt));
  report.invariants.append(check_symmetry(state, full, opt));
  report.monotonicity = check_monotonicity(state, plan.npath, opt);

  if (state.is_flat()) {
    report.invariants.checks.push_back(verdict_only("elliptic_identity", Verdict::Degenerate, "p vanishes identically"));
  } else {
    const double h = params.wavelength() / 100.0;
    report.elliptic_coarse = check_elliptic_identity(state, half, h);
    report.elliptic_fine = check_elliptic_identity(state, half, 0.5 * h);
    const double ratio = report.elliptic_coarse->residual_max / report.elliptic_fine->residual_max;
    report.elliptic_ratio = ratio;
    CheckResult conv;
    conv.name = "elliptic_identity";
    conv.samples = report.elliptic_coarse->points;
    conv.worst_location = report.elliptic_coarse->worst_location;
    conv.worst_margin = std::min(ratio - 3.0, 5.0 - ratio);
    conv.verdict = (ratio >= 3.0 && ratio <= 5.0) ? Verdict::Pass : Verdict::Fail;
    conv.metrics["ratio"] = ratio;
    conv.metrics["residual_coarse_scaled"] = report.elliptic_coarse->residual_max_scaled;
    conv.metrics["residual_fine_scaled"] = report.elliptic_fine->residual_max_scaled;
    report.invariants.checks.push_back(conv);
  }

  if (params.is_deep()) report.invariants.append(check_interior_exclusion(state, half, opt));
  report.invariants.checks.push_back(check_mean_current(state));
  report.invariants.checks.push_back(check_flux(state));
  return report;
}

}  // namespace wavepressure

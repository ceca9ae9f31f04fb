#include "wavepressure/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "wavepressure/basis.hpp"

namespace wavepressure {

void SolverSettings::validate() const {
  if (!(newton_tol > 0.0)) throw Error(ErrorKind::InvalidSettings, "newton_tol must be positive");
  if (max_newton_iters < 1) throw Error(ErrorKind::InvalidSettings, "max_iters must be at least 1");
  if (continuation_steps < 1) throw Error(ErrorKind::InvalidSettings, "continuation_steps must be at least 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw Error(ErrorKind::InvalidSettings, "damping must lie in (0, 1]");
}

ResidualReport ResidualReport::nondimensional(const WaveParameters& params) const {
  const ScaledParameters s = scale(params);
  ResidualReport out = *this;
  out.kinematic_max /= s.stream_scale();
  out.bernoulli_max /= s.length_scale;
  out.bed_max /= s.stream_scale();
  return out;
}

namespace {

// Nondimensional problem (kappa = g = 1). Unknown layout:
//   z = [a_1..a_N, b_1..b_N, c, Q, m]
struct Problem {
  int modes = 0;
  int nodes = 0;
  std::optional<double> depth;
  double current = 0.0;
  double height = 0.0;

  int size() const { return 2 * modes + 3; }
  int rows() const { return 2 * nodes + 1; }
  int wave_speed_index() const { return 2 * modes; }
  int head_index() const { return 2 * modes + 1; }
  int offset_index() const { return 2 * modes + 2; }
  double node(int i) const { return kPi * i / (nodes - 1); }
  double reference_depth() const { return depth ? *depth : 0.0; }
};

Problem make_problem(const ScaledParameters& s) {
  Problem p;
  p.modes = s.modes;
  p.nodes = s.surface_nodes;
  p.depth = s.depth;
  p.current = s.current;
  p.height = s.height;
  return p;
}

double branch_sign(Branch branch) { return branch == Branch::Following ? 1.0 : -1.0; }

double nondim_phase_speed(const Problem& p) { return p.depth ? std::sqrt(std::tanh(*p.depth)) : 1.0; }

Eigen::VectorXd linear_seed(const Problem& p, double amplitude, Branch branch) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(p.size());
  const double speed = p.current + branch_sign(branch) * nondim_phase_speed(p);
  const double cbar = p.current - speed;
  const double tanh_d = p.depth ? std::tanh(*p.depth) : 1.0;
  z(0) = amplitude;
  z(p.modes) = -cbar * amplitude / tanh_d;
  z(p.wave_speed_index()) = speed;
  z(p.head_index()) = p.reference_depth() + 0.5 * cbar * cbar;
  z(p.offset_index()) = -cbar * p.reference_depth();
  return z;
}

void assemble(const Problem& p, const Eigen::VectorXd& z, Eigen::VectorXd& f, Eigen::MatrixXd* jac) {
  const int n = p.modes;
  f.resize(p.rows());
  if (jac) jac->setZero(p.rows(), p.size());

  const std::span<const double> a(z.data(), n);
  const std::span<const double> b(z.data() + n, n);
  const double speed = z(p.wave_speed_index());
  const double head = z(p.head_index());

  StreamBasis basis;
  basis.wavenumber = 1.0;
  basis.depth = p.depth;
  basis.relative_current = p.current - speed;
  basis.offset = z(p.offset_index());
  basis.coeffs = b;

  std::vector<double> s(n + 1), c(n + 1), cs(n + 1), sn(n + 1);
  for (int i = 0; i < p.nodes; ++i) {
    const double x = p.node(i);
    double eta = 0.0;
    for (int j = 1; j <= n; ++j) {
      cs[j] = std::cos(j * x);
      sn[j] = std::sin(j * x);
      eta += a[j - 1] * cs[j];
    }
    const StreamJet jet = basis.evaluate(x, eta);
    const int kin = i;
    const int ber = p.nodes + i;
    f(kin) = jet.psi;
    f(ber) = 0.5 * jet.speed_squared() + eta + p.reference_depth() - head;
    if (!jac) continue;

    auto& J = *jac;
    const double d_ber_d_eta = jet.psi_x * jet.psi_xy + jet.psi_y * jet.psi_yy + 1.0;
    for (int l = 1; l <= n; ++l) {
      basis.vertical_modes(l, eta, s[l], c[l]);
      J(kin, l - 1) = jet.psi_y * cs[l];
      J(ber, l - 1) = d_ber_d_eta * cs[l];
      J(kin, n + l - 1) = s[l] * cs[l];
      J(ber, n + l - 1) = -jet.psi_x * l * s[l] * sn[l] + jet.psi_y * l * c[l] * cs[l];
    }
    J(kin, p.wave_speed_index()) = -(eta + p.reference_depth());
    J(ber, p.wave_speed_index()) = -jet.psi_y;
    J(ber, p.head_index()) = -1.0;
    J(kin, p.offset_index()) = 1.0;
  }

  const int hrow = 2 * p.nodes;
  double crest_to_trough = 0.0;
  for (int j = 1; j <= n; ++j) {
    if (j % 2 == 1) {
      crest_to_trough += 2.0 * a[j - 1];
      if (jac) (*jac)(hrow, j - 1) = 2.0;
    }
  }
  f(hrow) = crest_to_trough - p.height;
}

struct NewtonResult {
  Eigen::VectorXd z;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

NewtonResult newton(const Problem& p, Eigen::VectorXd z, const SolverSettings& settings) {
  NewtonResult out;
  Eigen::VectorXd f;
  Eigen::MatrixXd jac;
  const bool square = p.rows() == p.size();
  for (int it = 0; it <= settings.max_newton_iters; ++it) {
    assemble(p, z, f, &jac);
    out.residual = f.lpNorm<Eigen::Infinity>();
    out.iterations = it;
    if (!std::isfinite(out.residual)) break;
    if (square && out.residual < settings.newton_tol) {
      out.converged = true;
      break;
    }
    if (it == settings.max_newton_iters) break;
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-f);
    if (!step.allFinite()) break;
    z += settings.damping * step;
    if (!square && step.lpNorm<Eigen::Infinity>() < settings.newton_tol) {
      assemble(p, z, f, nullptr);
      out.residual = f.lpNorm<Eigen::Infinity>();
      out.iterations = it + 1;
      out.converged = true;
      break;
    }
  }
  out.z = std::move(z);
  return out;
}

FlowState to_state(const WaveParameters& params, const ScaledParameters& s, const Problem& p, const Eigen::VectorXd& z,
                   double residual, int iterations) {
  FlowState state{params};
  const int n = p.modes;
  state.surface_coeffs.assign(n + 1, 0.0);
  state.stream_coeffs.assign(n, 0.0);
  for (int j = 1; j <= n; ++j) {
    state.surface_coeffs[j] = z(j - 1) * s.length_scale;
    state.stream_coeffs[j - 1] = z(n + j - 1) * s.stream_scale();
  }
  state.wave_speed = z(p.wave_speed_index()) * s.velocity_scale;
  state.head = z(p.head_index()) * s.length_scale;
  state.flux = z(p.offset_index()) * s.stream_scale();
  state.residual_norm = residual;
  state.newton_iterations = iterations;
  return state;
}

Eigen::VectorXd from_state(const FlowState& state, const ScaledParameters& s, const Problem& p) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(p.size());
  const int n = std::min(p.modes, state.modes());
  for (int j = 1; j <= n; ++j) {
    z(j - 1) = state.surface_coeffs[j] / s.length_scale;
    z(p.modes + j - 1) = state.stream_coeffs[j - 1] / s.stream_scale();
  }
  z(p.wave_speed_index()) = state.wave_speed / s.velocity_scale;
  z(p.head_index()) = state.head / s.length_scale;
  z(p.offset_index()) = state.flux / s.stream_scale();
  return z;
}

FlowState flat_state(const WaveParameters& params, Branch branch) {
  FlowState state{params};
  const int n = params.modes();
  state.surface_coeffs.assign(n + 1, 0.0);
  state.stream_coeffs.assign(n, 0.0);
  const double c = params.flat_speed().value_or(params.current() + branch_sign(branch) * linear_phase_speed(params));
  state.wave_speed = c;
  const double cbar = params.current() - c;
  const double d = params.is_deep() ? 0.0 : params.depth();
  state.head = d + cbar * cbar / (2.0 * params.gravity());
  state.flux = -cbar * d;
  return state;
}

void check_branch(const WaveParameters& params, const SolverSettings& settings) {
  settings.validate();
  if (params.is_deep() && settings.branch == Branch::Opposing) {
    throw Error(ErrorKind::InvalidSettings, "deep water without current has no opposing branch with c > 0");
  }
}

// One Newton solve towards `target` from a dimensional seed, with the seed's
// amplitude rescaled to the target height.
NewtonResult attempt(const Problem& p, const ScaledParameters& s, const FlowState& seed, const SolverSettings& settings) {
  Eigen::VectorXd z;
  const double seed_height = [&] {
    double h = 0.0;
    for (std::size_t j = 1; j < seed.surface_coeffs.size(); j += 2) h += 2.0 * seed.surface_coeffs[j];
    return h / s.length_scale;
  }();
  if (seed.is_flat() || seed_height <= 0.0) {
    z = linear_seed(p, 0.5 * p.height, settings.branch);
  } else {
    z = from_state(seed, s, p);
    const double ratio = p.height / seed_height;
    for (int i = 0; i < 2 * p.modes; ++i) z(i) *= ratio;
  }
  return newton(p, std::move(z), settings);
}

// One continuation step from `previous` to `target`, bisecting once on failure.
FlowState step_to(const FlowState& previous, const WaveParameters& target, const SolverSettings& settings, int index) {
  if (target.height() == 0.0) return flat_state(target, settings.branch);
  const ScaledParameters s = scale(target);
  const Problem p = make_problem(s);
  NewtonResult r = attempt(p, s, previous, settings);
  if (r.converged) return to_state(target, s, p, r.z, r.residual, r.iterations);

  const double previous_h = previous.is_flat() ? 0.0 : previous.params.height();
  const WaveParameters mid_params = target.with_height(0.5 * (previous_h + target.height()));
  const ScaledParameters ms = scale(mid_params);
  const Problem mp = make_problem(ms);
  const NewtonResult mid = attempt(mp, ms, previous, settings);
  if (mid.converged) {
    const FlowState mid_state = to_state(mid_params, ms, mp, mid.z, mid.residual, mid.iterations);
    r = attempt(p, s, mid_state, settings);
    r.iterations += mid.iterations;
    if (r.converged) return to_state(target, s, p, r.z, r.residual, r.iterations);
  }
  const bool steep = !previous.is_flat() || mid.converged;
  throw ConvergenceError(steep ? ErrorKind::SteepnessLimit : ErrorKind::NoConvergence,
                         "Newton failed at H = " + std::to_string(target.height()) + " (residual " +
                             std::to_string(r.residual) + ")",
                         r.residual, index);
}

FlowState solve_heights(const WaveParameters& params, const std::vector<double>& heights, const SolverSettings& settings,
                        std::vector<FlowState>* trail) {
  check_branch(params, settings);
  FlowState current = flat_state(params.with_height(0.0), settings.branch);
  for (std::size_t step = 0; step < heights.size(); ++step) {
    current = step_to(current, params.with_height(heights[step]), settings, static_cast<int>(step));
    if (trail) trail->push_back(current);
  }
  return current;
}

FlowState solve_any(const WaveParameters& params, const SolverSettings& settings) {
  check_branch(params, settings);
  if (params.height() == 0.0) return flat_state(params, settings.branch);
  std::vector<double> heights;
  for (int s = 1; s <= settings.continuation_steps; ++s) {
    heights.push_back(params.height() * s / settings.continuation_steps);
  }
  heights.back() = params.height();
  FlowState out = solve_heights(params, heights, settings, nullptr);
  return out;
}

}  // namespace

double linear_phase_speed(const WaveParameters& params) {
  const double kappa = params.wavenumber();
  const double g = params.gravity();
  if (params.is_deep()) return std::sqrt(g / kappa);
  return std::sqrt(g / kappa * std::tanh(kappa * params.depth()));
}

FlowState linear_wave(const WaveParameters& params, double amplitude, Branch branch) {
  if (!(amplitude >= 0.0)) throw Error(ErrorKind::NegativeHeight, "amplitude must be non-negative");
  ParameterSet raw = params.raw();
  raw.flat_speed.reset();
  const WaveParameters base = WaveParameters::validate(raw);
  if (amplitude == 0.0) return flat_state(base, branch);
  WaveParameters target = base;
  try {
    target = base.with_height(2.0 * amplitude);
  } catch (const Error&) {
    // Amplitude beyond the solver's sanity bound; keep the caller's parameters.
  }
  ScaledParameters s = scale(target);
  s.height = 2.0 * amplitude / s.length_scale;
  const Problem p = make_problem(s);
  const Eigen::VectorXd z = linear_seed(p, 0.5 * p.height, branch);
  Eigen::VectorXd f;
  assemble(p, z, f, nullptr);
  return to_state(target, s, p, z, f.lpNorm<Eigen::Infinity>(), 0);
}

FlowState solve_steady(const WaveParameters& params, const SolverSettings& settings) {
  if (params.is_deep()) throw Error(ErrorKind::InvalidSettings, "solve_steady needs finite depth; use solve_deep");
  return solve_any(params, settings);
}

FlowState solve_deep(const WaveParameters& params, const SolverSettings& settings) {
  if (!params.is_deep()) throw Error(ErrorKind::InvalidSettings, "solve_deep needs deep-water parameters");
  return solve_any(params, settings);
}

FlowState solve(const WaveParameters& params, const SolverSettings& settings) {
  return params.is_deep() ? solve_deep(params, settings) : solve_steady(params, settings);
}

std::vector<FlowState> continuation_sweep(const WaveParameters& params, const std::vector<double>& heights,
                                          const SolverSettings& settings) {
  for (std::size_t i = 1; i < heights.size(); ++i) {
    if (!(heights[i] > heights[i - 1])) {
      throw Error(ErrorKind::InvalidSettings, "sweep heights must be strictly increasing");
    }
  }
  std::vector<FlowState> trail;
  trail.reserve(heights.size());
  solve_heights(params, heights, settings, &trail);
  return trail;
}

FlowState continue_to(const FlowState& previous, double height, const SolverSettings& settings) {
  check_branch(previous.params, settings);
  return step_to(previous, previous.params.with_height(height), settings, -1);
}

FlowState refine(const FlowState& seed, const WaveParameters& target, const SolverSettings& settings) {
  check_branch(target, settings);
  if (target.height() == 0.0) return flat_state(target, settings.branch);
  const ScaledParameters s = scale(target);
  const Problem p = make_problem(s);
  const NewtonResult r = attempt(p, s, seed, settings);
  if (!r.converged) {
    throw ConvergenceError(ErrorKind::NoConvergence, "Newton refinement failed", r.residual, -1);
  }
  return to_state(target, s, p, r.z, r.residual, r.iterations);
}

ResidualReport residual(const FlowState& state, int dense_factor) {
  if (dense_factor < 2) throw Error(ErrorKind::InvalidSettings, "dense_factor must be at least 2");
  const WaveParameters& params = state.params;
  StreamBasis basis;
  basis.wavenumber = state.wavenumber();
  basis.depth = params.is_deep() ? std::nullopt : std::optional<double>(params.depth());
  basis.relative_current = state.relative_current();
  basis.offset = state.flux;
  basis.coeffs = state.stream_coeffs;

  ResidualReport report;
  const int count = dense_factor * params.surface_nodes();
  const double half = 0.5 * params.wavelength();
  const double g = params.gravity();
  for (int i = 0; i < count; ++i) {
    const double x = (i + 0.5) * half / count;
    const double eta = evaluate_surface(state.surface_coeffs, basis.wavenumber, x).eta;
    const StreamJet jet = basis.evaluate(x, eta);
    report.kinematic_max = std::max(report.kinematic_max, std::abs(jet.psi));
    const double bern = jet.speed_squared() / (2.0 * g) + eta + basis.reference_depth() - state.head;
    report.bernoulli_max = std::max(report.bernoulli_max, std::abs(bern));
    if (basis.depth) {
      const StreamJet bed = basis.evaluate(x, -*basis.depth);
      report.bed_max = std::max(report.bed_max, std::abs(bed.psi - state.flux));
    }
  }
  report.samples = count;
  return report;
}

}  // namespace wavepressure

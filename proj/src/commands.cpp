#include "wavepressure/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "wavepressure/fields.hpp"
#include "wavepressure/io.hpp"
#include "wavepressure/verify.hpp"

namespace wavepressure {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NoConvergence:
    case ErrorKind::SteepnessLimit:
      return kExitNoConvergence;
    case ErrorKind::Io:
      return kExitIo;
    // A state that cannot be evaluated or verified is itself a violation.
    case ErrorKind::OutOfDomain:
    case ErrorKind::PathOutOfDomain:
    case ErrorKind::DegenerateField:
    case ErrorKind::VanishingGradient:
    case ErrorKind::AboveTrough:
      return kExitViolation;
    default:
      return kExitConfig;
  }
}

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (step " << e.step() << ", residual " << e.last_residual() << ")\n";
    return kExitNoConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: Io: " << e.what() << '\n';
    return kExitIo;
  }
}

FlowState solve_and_save(const RunConfig& config, std::ostream& log) {
  const FlowState state = solve(config.params(), config.solver);
  save_state(config.output_dir / "state.json", state);
  write_atomic(config.output_dir / "residuals.json", residuals_to_json(state, residual(state)));
  log << "solved: c = " << format_double(state.wave_speed) << ", newton iterations " << state.newton_iterations
      << ", residual " << state.residual_norm << '\n';
  return state;
}

/// Stored state if it matches the configured parameters, otherwise a fresh solve.
FlowState obtain_state(const RunConfig& config, std::ostream& log) {
  const fs::path path = config.output_dir / "state.json";
  if (fs::exists(path)) {
    FlowState stored = load_state(path);
    if (stored.params == config.params()) {
      log << "using " << path.string() << '\n';
      return stored;
    }
    log << path.string() << " was produced for other parameters; solving again\n";
  }
  return solve_and_save(config, log);
}

VerifyPlan plan_for(const RunConfig& config) {
  VerifyPlan plan;
  plan.nx = config.nx;
  plan.ny = config.ny;
  return plan;
}

CheckResult check_current_at(const FlowState& state, double y0) {
  CheckResult c;
  c.name = "mean_current_y0";
  c.samples = 1;
  c.worst_location = {0.0, y0};
  const double tol = 1e-10 * std::max(state.wave_speed, 1.0);
  const double dev = std::abs(mean_current(state, y0) - state.params.current());
  c.worst_margin = tol - dev;
  c.metrics["deviation"] = dev;
  c.verdict = dev < tol ? Verdict::Pass : Verdict::Fail;
  return c;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

int cmd_solve(const RunConfig& config, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    solve_and_save(config, log);
    return kExitOk;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const FlowState state = obtain_state(config, log);
    VerificationReport report = verify_state(state, plan_for(config));
    if (config.y0) report.invariants.checks.push_back(check_current_at(state, *config.y0));
    write_atomic(config.output_dir / "report.json", report_to_json(state, report));
    if (report.degenerate) log << "degenerate current: k = c pathway\n";
    const auto violations = report.violations();
    if (!violations.empty()) {
      for (const auto& name : violations) err << "violated: " << name << '\n';
      return kExitViolation;
    }
    log << "all checks satisfied\n";
    return kExitOk;
  });
}

int cmd_field(const RunConfig& config, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const FlowState state = obtain_state(config, log);
    if (config.nx < 2 || config.ny < 2) throw Error(ErrorKind::InvalidSettings, "nx and ny must be at least 2");
    const int nx = config.nx % 2 == 1 ? config.nx : config.nx + 1;
    if (nx != config.nx) log << "nx raised to " << nx << " (full-period grid needs a centre column)\n";
    const FieldGrid grid = sample_grid(state, nx, config.ny, Region::FullPeriod);
    write_atomic(config.output_dir / "field.csv", field_csv(grid));
    log << "wrote " << grid.samples.size() << " rows\n";
    return kExitOk;
  });
}

int cmd_sweep(const RunConfig& config, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    if (config.heights.empty()) throw Error(ErrorKind::MissingRequired, "sweep needs 'heights'");
    for (std::size_t i = 1; i < config.heights.size(); ++i) {
      if (!(config.heights[i] > config.heights[i - 1])) {
        throw Error(ErrorKind::InvalidSettings, "heights must be strictly increasing");
      }
    }
    const WaveParameters base = config.params();
    for (double h : config.heights) base.with_height(h);  // validate every height up front

    const fs::path path = config.output_dir / "sweep.csv";
    std::string csv = "H,c,Q_or_E,m,max_p,min_p,crest_is_max,trough_is_min,newton_iters,wall_ms\n";
    write_atomic(path, csv);

    const VerifyPlan plan = plan_for(config);
    std::optional<FlowState> previous;
    bool all_ok = true;
    for (std::size_t i = 0; i < config.heights.size(); ++i) {
      const double h = config.heights[i];
      const auto start = std::chrono::steady_clock::now();
      FlowState state = [&] {
        try {
          return previous ? continue_to(*previous, h, config.solver) : solve(base.with_height(h), config.solver);
        } catch (const Error& e) {
          err << "continuation stopped at H = " << format_double(h) << '\n';
          throw;
        }
      }();
      const double wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

      const VerificationReport report = verify_state(state, plan);
      for (const auto& name : report.violations()) {
        err << "H = " << format_double(h) << " violated: " << name << '\n';
        all_ok = false;
      }
      const bool deep = state.params.is_deep();
      csv += format_double(h) + ',' + format_double(state.wave_speed) + ',' + format_double(state.head) + ',' +
             (deep ? std::string() : format_double(state.flux)) + ',';
      if (report.extrema) {
        csv += format_double(report.extrema->max_value) + ',' + format_double(report.extrema->min_value) + ',' +
               bool_text(report.extrema->crest_is_max) + ',' + bool_text(report.extrema->trough_is_min);
      } else {
        csv += ",,false,false";
      }
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.3f", wall_ms);
      csv += ',' + std::to_string(state.newton_iterations) + ',' + ms + '\n';
      write_atomic(path, csv);
      log << "H = " << format_double(h) << ": c = " << format_double(state.wave_speed) << '\n';
      previous = std::move(state);
    }
    return all_ok ? kExitOk : kExitViolation;
  });
}

int run_command(std::string_view command, const fs::path& config_path, const std::optional<fs::path>& output_dir,
                std::ostream& log, std::ostream& err) {
  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Io ? kExitIo : kExitConfig;
  }
  if (output_dir) config.output_dir = *output_dir;
  if (command == "solve") return cmd_solve(config, log, err);
  if (command == "verify") return cmd_verify(config, log, err);
  if (command == "field") return cmd_field(config, log, err);
  if (command == "sweep") return cmd_sweep(config, log, err);
  err << "error: unknown command '" << command << "'\n";
  return kExitConfig;
}

}  // namespace wavepressure

#include "wavepressure/fields.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

namespace wavepressure {

double deep_truncation_level(const WaveParameters& params) { return -3.0 * params.wavelength(); }

FieldEvaluator::FieldEvaluator(const FlowState& state, bool check_domain)
    : state_(&state), check_domain_(check_domain), tolerance_(1e-12 * state.params.wavelength()) {
  basis_.wavenumber = state.wavenumber();
  if (!state.params.is_deep()) basis_.depth = state.params.depth();
  basis_.relative_current = state.relative_current();
  basis_.offset = state.flux;
  basis_.coeffs = state.stream_coeffs;
  flat_ = state.is_flat();
}

double FieldEvaluator::reduce(double x) const {
  const double L = state_->params.wavelength();
  double r = std::fmod(x, L);
  if (r < 0.0) r += L;
  if (r >= L) r -= L;
  return r;
}

SurfaceJet FieldEvaluator::surface_jet(double x) const {
  return evaluate_surface(state_->surface_coeffs, basis_.wavenumber, x);
}

double FieldEvaluator::surface(double x) const { return surface_jet(x).eta; }

void FieldEvaluator::check(double x, double y) const {
  if (!check_domain_) return;
  if (y > surface(x) + tolerance_) {
    throw Error(ErrorKind::OutOfDomain, "point lies above the free surface");
  }
  if (basis_.depth && y < -*basis_.depth - tolerance_) {
    throw Error(ErrorKind::OutOfDomain, "point lies below the bed");
  }
}

StreamJet FieldEvaluator::stream_jet(double x, double y) const {
  check(x, y);
  return basis_.evaluate(x, y);
}

Velocity FieldEvaluator::velocity(double x, double y) const {
  const StreamJet jet = stream_jet(x, y);
  return {state_->wave_speed + jet.psi_y, -jet.psi_x};
}

double FieldEvaluator::pressure(double x, double y) const {
  const StreamJet jet = stream_jet(x, y);
  const WaveParameters& p = state_->params;
  const double rho = p.density();
  const double g = p.gravity();
  return p.atmospheric_pressure() + rho * g * state_->head - rho * g * (y + basis_.reference_depth()) -
         0.5 * rho * jet.speed_squared();
}

double FieldEvaluator::dynamic_pressure(double x, double y) const {
  const StreamJet jet = stream_jet(x, y);
  const WaveParameters& p = state_->params;
  if (flat_) return 0.0;  // uniform stream: head - d cancels the kinetic term exactly
  const double rho = p.density();
  return rho * p.gravity() * (state_->head - basis_.reference_depth()) - 0.5 * rho * jet.speed_squared();
}

double FieldEvaluator::dynamic_pressure_from_total(double x, double y) const {
  const WaveParameters& p = state_->params;
  return pressure(x, y) - (p.atmospheric_pressure() - p.density() * p.gravity() * y);
}

FieldSample FieldEvaluator::sample(double x, double y) const {
  const StreamJet jet = stream_jet(x, y);
  const WaveParameters& p = state_->params;
  const double rho = p.density();
  const double g = p.gravity();
  const double kinetic = 0.5 * rho * jet.speed_squared();
  FieldSample s;
  s.x = reduce(x);
  s.y = y;
  s.psi = jet.psi;
  s.u = state_->wave_speed + jet.psi_y;
  s.v = -jet.psi_x;
  s.pressure = p.atmospheric_pressure() + rho * g * state_->head - rho * g * (y + basis_.reference_depth()) - kinetic;
  s.dynamic_pressure = flat_ ? 0.0 : rho * g * (state_->head - basis_.reference_depth()) - kinetic;
  return s;
}

double surface_at(const FlowState& state, double x) { return FieldEvaluator(state).surface(x); }
double stream_at(const FlowState& state, double x, double y) { return FieldEvaluator(state).stream(x, y); }
Velocity velocity_at(const FlowState& state, double x, double y) { return FieldEvaluator(state).velocity(x, y); }
double pressure_at(const FlowState& state, double x, double y) { return FieldEvaluator(state).pressure(x, y); }
double dynamic_pressure_at(const FlowState& state, double x, double y) {
  return FieldEvaluator(state).dynamic_pressure(x, y);
}

double flux_at(const FlowState& state, double x) {
  if (state.params.is_deep()) throw Error(ErrorKind::DeepWaterUnsupported, "flux is defined for finite depth only");
  const FieldEvaluator eval(state);
  const double bottom = -state.params.depth();
  const double top = eval.surface(x);
  const double integral = boost::math::quadrature::gauss<double, 32>::integrate(
      [&](double y) { return eval.velocity(x, y).u - state.wave_speed; }, bottom, top);
  return -integral;
}

double flux(const FlowState& state, int stations) {
  if (state.params.is_deep()) throw Error(ErrorKind::DeepWaterUnsupported, "flux is defined for finite depth only");
  double sum = 0.0;
  for (int i = 0; i < stations; ++i) sum += flux_at(state, state.params.wavelength() * i / stations);
  return sum / stations;
}

double mean_current(const FlowState& state, double y0) {
  const FieldEvaluator eval(state);
  const double L = state.params.wavelength();
  const double tol = 1e-12 * L;
  if (y0 > eval.surface(0.5 * L) + tol) {
    throw Error(ErrorKind::AboveTrough, "mean current level must lie below the trough");
  }
  if (!state.params.is_deep() && y0 < -state.params.depth() - tol) {
    throw Error(ErrorKind::OutOfDomain, "mean current level lies below the bed");
  }
  const int n = std::max(8 * state.modes(), 64);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += eval.velocity(L * i / n, y0).u;
  return sum / n;
}

namespace {

double level(const FlowState& state, double eta, double floor, int j, int ny, const GridOptions& options) {
  if (j == ny - 1) return eta;
  const double sigma = static_cast<double>(j) / (ny - 1);
  if (!state.params.is_deep()) {
    if (j == 0) return floor;
    return floor + sigma * (eta - floor);
  }
  if (j == 0) return floor;
  const double beta = options.deep_stretching;
  const double frac = std::expm1(beta * (1.0 - sigma)) / std::expm1(beta);
  return eta - (eta - floor) * frac;
}

}  // namespace

FieldGrid sample_grid(const FlowState& state, int nx, int ny, Region region, const GridOptions& options) {
  const WaveParameters& params = state.params;
  const double L = params.wavelength();
  FieldGrid grid;
  grid.region = region;

  switch (region) {
    case Region::FullPeriod:
      if (nx < 3 || nx % 2 == 0) throw Error(ErrorKind::InvalidSettings, "full-period grids need odd nx >= 3");
      for (int i = 0; i < nx; ++i) grid.column_x.push_back(-0.5 * L + L * i / (nx - 1));
      break;
    case Region::HalfPeriod:
    case Region::Surface:
    case Region::Bed:
      if (nx < 3) throw Error(ErrorKind::InvalidSettings, "nx must be at least 3");
      for (int i = 0; i < nx; ++i) grid.column_x.push_back(0.5 * L * i / (nx - 1));
      break;
    case Region::CrestLine:
      nx = 1;
      grid.column_x.push_back(0.0);
      break;
    case Region::TroughLine:
      nx = 1;
      grid.column_x.push_back(0.5 * L);
      break;
  }
  if (region == Region::Surface || region == Region::Bed) {
    ny = 1;
  } else if (ny < 3) {
    throw Error(ErrorKind::InvalidSettings, "ny must be at least 3");
  }
  grid.nx = nx;
  grid.ny = ny;
  // Exact half-period endpoints.
  if (region == Region::FullPeriod) grid.column_x[(nx - 1) / 2] = 0.0;

  const FieldEvaluator eval(state);
  const double floor = params.is_deep() ? options.deep_floor.value_or(deep_truncation_level(params)) : -params.depth();
  grid.samples.resize(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i) {
    const double x = grid.column_x[i];
    const double eta = eval.surface(x);
    for (int j = 0; j < ny; ++j) {
      double y = 0.0;
      if (region == Region::Surface) {
        y = eta;
      } else if (region == Region::Bed) {
        y = floor;
      } else {
        y = level(state, eta, floor, j, ny, options);
      }
      grid.at(i, j) = eval.sample(x, y);
    }
  }
  return grid;
}

}  // namespace wavepressure

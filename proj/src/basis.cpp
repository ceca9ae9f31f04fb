#include "wavepressure/basis.hpp"

#include <cmath>

namespace wavepressure {

void StreamBasis::vertical_modes(int j, double y, double& s, double& c) const noexcept {
  const double jk = j * wavenumber;
  if (!depth) {
    s = c = std::exp(jk * y);
    return;
  }
  // sinh(t)/cosh(D) and cosh(t)/cosh(D) rewritten without overflow for large D.
  const double t = jk * (y + *depth);
  const double big = jk * *depth;
  const double denom = 1.0 + std::exp(-2.0 * big);
  const double grow = std::exp(t - big);
  const double decay = std::exp(-t - big);
  s = (grow - decay) / denom;
  c = (grow + decay) / denom;
}

StreamJet StreamBasis::evaluate(double x, double y) const noexcept {
  StreamJet jet;
  jet.psi = offset + relative_current * (y + reference_depth());
  jet.psi_y = relative_current;
  const int n = static_cast<int>(coeffs.size());
  for (int j = 1; j <= n; ++j) {
    const double b = coeffs[j - 1];
    if (b == 0.0) continue;
    double s = 0.0;
    double c = 0.0;
    vertical_modes(j, y, s, c);
    const double jk = j * wavenumber;
    const double cs = std::cos(jk * x);
    const double sn = std::sin(jk * x);
    jet.psi += b * s * cs;
    jet.psi_x -= b * jk * s * sn;
    jet.psi_y += b * jk * c * cs;
    jet.psi_xx -= b * jk * jk * s * cs;
    jet.psi_xy -= b * jk * jk * c * sn;
    jet.psi_yy += b * jk * jk * s * cs;
  }
  return jet;
}

SurfaceJet evaluate_surface(std::span<const double> coeffs, double wavenumber, double x) noexcept {
  SurfaceJet jet;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double a = coeffs[j];
    if (a == 0.0) continue;
    const double jk = static_cast<double>(j) * wavenumber;
    const double cs = std::cos(jk * x);
    jet.eta += a * cs;
    jet.eta_x -= a * jk * std::sin(jk * x);
    jet.eta_xx -= a * jk * jk * cs;
  }
  return jet;
}

}  // namespace wavepressure

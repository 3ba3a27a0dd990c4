#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical paths; each routine reaches its answer by a different route
// (quadrature, ODE integration, closed-form discrete operators).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>

namespace qhd::reference {

inline constexpr double pi = std::numbers::pi;

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) {
    sum += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

/// Transmitted amplitude (at the right wall, per unit incident amplitude at
/// the left wall) from RK4 integration of psi'' = 2m(V0 - E)/hbar^2 psi
/// backwards through the barrier, starting from a pure outgoing wave.
inline std::complex<double> rk4_transmission(double energy, double v0,
                                             double width, double mass = 1.0,
                                             double hbar = 1.0,
                                             std::size_t steps = 4000) {
  using c = std::complex<double>;
  const double k = std::sqrt(2.0 * mass * energy) / hbar;
  const double coeff = 2.0 * mass * (v0 - energy) / (hbar * hbar);
  c psi = 1.0;
  c dpsi = c(0.0, k);
  const double h = -width / static_cast<double>(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    // y' = dpsi, dpsi' = coeff * psi
    const c k1y = dpsi, k1d = coeff * psi;
    const c k2y = dpsi + 0.5 * h * k1d, k2d = coeff * (psi + 0.5 * h * k1y);
    const c k3y = dpsi + 0.5 * h * k2d, k3d = coeff * (psi + 0.5 * h * k2y);
    const c k4y = dpsi + h * k3d, k4d = coeff * (psi + h * k3y);
    psi += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    dpsi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
  }
  const c incident = 0.5 * (psi + dpsi / c(0.0, k));
  return 1.0 / incident;
}

/// Continuity residual of the cos^2 profile on a uniform grid, from the
/// trigonometric identities the central differences satisfy exactly:
///   rho0 |sin 2theta| |sin(2 mu c dt)/(2 dt) - c sin(2 mu h)/(2 h)|.
inline double continuity_residual_closed_form(double mu, double c, double rho0,
                                              double h, double dt,
                                              double max_abs_sin2theta) {
  return rho0 * max_abs_sin2theta *
         std::abs(std::sin(2.0 * mu * c * dt) / (2.0 * dt) -
                  c * std::sin(2.0 * mu * h) / (2.0 * h));
}

/// Quantum force density of the cos^2 profile under nested central
/// differences: (hbar^2 mu^2 rho0/m) |s^2 - r| sin(2 mu h)/(2h) |sin 2theta|
/// with s = sin(2 mu h)/(2 mu h), r = (1 - cos 2 mu h)/(2 mu^2 h^2).
inline double momentum_residual_closed_form(double mu, double rho0, double h,
                                            double max_abs_sin2theta,
                                            double hbar = 1.0, double m = 1.0) {
  const double x = 2.0 * mu * h;
  const double s = std::sin(x) / x;
  const double r = (1.0 - std::cos(x)) / (2.0 * mu * mu * h * h);
  return hbar * hbar * mu * mu * rho0 / m * std::abs(s * s - r) *
         std::sin(x) / (2.0 * h) * max_abs_sin2theta;
}

/// max |sin 2theta| over the interior points of an n-point grid spanning
/// theta in [-pi/2, pi/2].
inline double max_sin2theta_on_grid(std::size_t n, std::size_t skip = 1) {
  double best = 0.0;
  const double h = pi / static_cast<double>(n - 1);
  for (std::size_t j = skip; j + skip < n; ++j) {
    best = std::max(best, std::abs(std::sin(2.0 * (-pi / 2 + h * static_cast<double>(j)))));
  }
  return best;
}

}  // namespace qhd::reference

#pragma once

// Three-region soliton picture for a rectangular barrier: wall matching of
// the density amplitudes and the resonant-tunneling condition
// (k1 - k2) a = n pi.

#include <cmath>
#include <optional>
#include <vector>

#include "qhdlab/physics.hpp"

namespace qhd {

/// Particle, barrier and the derived wavenumbers. k3 always equals k1:
/// region III is free space at the same energy.
struct ScatteringSetup {
  ParticleState particle;
  Barrier barrier;
  PhysicalContext ctx = PhysicalContext::natural();
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  Regime regime = Regime::critical;

  double k1a() const noexcept { return k1 * barrier.width; }
  double k2a() const noexcept { return k2 * barrier.width; }
};

/// Throws invalid_argument for a non-positive energy/speed or bad barrier.
ScatteringSetup make_setup(const ParticleState& particle,
                           const Barrier& barrier, const PhysicalContext& ctx);

/// Barrier-region factor: cos(k2 a) above, cosh(k2 a) below, 1 at E = V0.
double barrier_factor(const ScatteringSetup& setup) noexcept;

struct ScatteringSolution {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double rho3 = 0.0;
  bool resonant = false;
  std::optional<int> resonance_index;
  ScatteringSetup setup;

  /// rho3 / rho1, the transmission diagnostic of the soliton picture.
  double amplitude_ratio() const noexcept {
    return barrier_factor(setup) * barrier_factor(setup) /
           (std::cos(setup.k1a()) * std::cos(setup.k1a()));
  }
};

/// rho2 = rho1 at x = 0, then rho3 = rho2 D(k2 a)^2 / cos^2(k1 a).
/// resonant when rho3 equals rho1 to tol.resonance (relative).
/// Throws matching_singularity when |cos(k1 a)| < tol.singularity.
ScatteringSolution solve_regions(const ScatteringSetup& setup, double rho1,
                                 const Tolerances& tol = {});

struct ResonanceCheck {
  bool resonant = false;
  int nearest_n = 0;
  double residual = 0.0;  // |(k1 - k2) a - n pi|
  double winding = 0.0;   // (k1 - k2) a / pi
};

/// Tests (k1 - k2) a = n pi against the nearest integer n.
/// Throws regime unless the setup is above the barrier.
ResonanceCheck is_resonant(const ScatteringSetup& setup, double tol);

/// f(E) = (sqrt(2mE) - sqrt(2m(E - V0))) a / hbar - n pi.
double resonance_function(double energy, const Barrier& barrier, int n,
                          const PhysicalContext& ctx);

/// Energy E > V0 solving f(E) = 0 by bisection, bracketed to relative width
/// rel_tol. No root exists when n pi >= sqrt(2 m V0) a / hbar.
std::optional<double> resonance_energies(const Barrier& barrier, int n,
                                         const PhysicalContext& ctx,
                                         double rel_tol = 1e-14);

struct ResonanceRoot {
  int n = 0;
  double energy = 0.0;
};

/// Every root of (k1 - k2) a = n pi with energy in (e_lo, e_hi], n = 1, 2, ...
std::vector<ResonanceRoot> resonance_roots_between(const Barrier& barrier,
                                                   double e_lo, double e_hi,
                                                   const PhysicalContext& ctx,
                                                   double rel_tol = 1e-14);

}  // namespace qhd

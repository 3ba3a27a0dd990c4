#include "qhdlab/scattering.hpp"

#include <cmath>
#include <string>

namespace qhd {

ScatteringSetup make_setup(const ParticleState& particle,
                           const Barrier& barrier, const PhysicalContext& ctx) {
  validate(particle);
  validate(barrier);
  ScatteringSetup setup{particle, barrier, ctx};
  setup.k1 = wavenumber(particle.energy, 0.0, ctx).k;
  const Wavenumber inside = wavenumber(particle.energy, barrier.height, ctx);
  setup.k2 = inside.k;
  setup.regime = inside.regime;
  setup.k3 = setup.k1;
  return setup;
}

double barrier_factor(const ScatteringSetup& setup) noexcept {
  switch (setup.regime) {
    case Regime::above: return std::cos(setup.k2a());
    case Regime::below: return std::cosh(setup.k2a());
    case Regime::critical: return 1.0;
  }
  return 1.0;
}

ScatteringSolution solve_regions(const ScatteringSetup& setup, double rho1,
                                 const Tolerances& tol) {
  if (!(rho1 >= 0.0) || !std::isfinite(rho1)) {
    throw Error(ErrorCode::invalid_argument, "incident amplitude must be >= 0");
  }
  const double wall = std::cos(setup.k1a());
  if (std::abs(wall) < tol.singularity) {
    throw Error(ErrorCode::matching_singularity,
                "cos(k1 a) vanishes at the right wall (k1 a = " +
                    std::to_string(setup.k1a()) + ")");
  }
  const double inner = barrier_factor(setup);

  ScatteringSolution sol;
  sol.setup = setup;
  sol.rho1 = rho1;
  sol.rho2 = rho1;
  sol.rho3 = sol.rho2 * (inner * inner) / (wall * wall);

  const double scale = rho1 > 0.0 ? rho1 : 1.0;
  sol.resonant = std::abs(sol.rho3 - sol.rho1) <= tol.resonance * scale &&
                 setup.k3 == setup.k1;
  if (sol.resonant) {
    sol.resonance_index = static_cast<int>(
        std::lround(std::abs(setup.k1a() - setup.k2a()) / pi));
  }
  return sol;
}

ResonanceCheck is_resonant(const ScatteringSetup& setup, double tol) {
  if (setup.regime != Regime::above) {
    throw Error(ErrorCode::regime,
                "the (k1 - k2) a = n pi condition applies only for E > V0");
  }
  ResonanceCheck check;
  const double phase = (setup.k1 - setup.k2) * setup.barrier.width;
  check.winding = phase / pi;
  check.nearest_n = static_cast<int>(std::lround(std::abs(check.winding)));
  check.residual = std::abs(std::abs(phase) - check.nearest_n * pi);
  check.resonant = check.residual < tol;
  return check;
}

double resonance_function(double energy, const Barrier& barrier, int n,
                          const PhysicalContext& ctx) {
  const double p1 = std::sqrt(2.0 * ctx.mass() * energy);
  const double p2 = std::sqrt(2.0 * ctx.mass() * (energy - barrier.height));
  // p1 - p2 without cancellation at large E
  const double dp = 2.0 * ctx.mass() * barrier.height / (p1 + p2);
  return dp * barrier.width / ctx.hbar() - n * pi;
}

std::optional<double> resonance_energies(const Barrier& barrier, int n,
                                         const PhysicalContext& ctx,
                                         double rel_tol) {
  if (n < 1) {
    throw Error(ErrorCode::invalid_argument, "resonance index must be >= 1");
  }
  if (!(barrier.height > 0.0)) return std::nullopt;
  const double v0 = barrier.height;
  // f decreases from sqrt(2 m V0) a / hbar - n pi at V0+ towards -n pi
  const double sup =
      std::sqrt(2.0 * ctx.mass() * v0) * barrier.width / ctx.hbar();
  if (!(n * pi < sup)) return std::nullopt;

  double lo = v0;
  double hi = 2.0 * v0;
  while (resonance_function(hi, barrier, n, ctx) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (resonance_function(mid, barrier, n, ctx) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<ResonanceRoot> resonance_roots_between(const Barrier& barrier,
                                                   double e_lo, double e_hi,
                                                   const PhysicalContext& ctx,
                                                   double rel_tol) {
  std::vector<ResonanceRoot> roots;
  // roots move to lower energy as n grows, so stop once a root is absent
  for (int n = 1;; ++n) {
    const auto e = resonance_energies(barrier, n, ctx, rel_tol);
    if (!e) break;
    if (*e > e_lo && *e <= e_hi) roots.push_back({n, *e});
  }
  return roots;
}

}  // namespace qhd

#include "qhdlab/junction.hpp"

#include <cmath>
#include <string>

namespace qhd {

double transmitted_prefactor(const JunctionState& state,
                             const Tolerances& tol) {
  const double wall = std::cos(state.setup.k1a());
  if (std::abs(wall) < tol.singularity) {
    throw Error(ErrorCode::matching_singularity,
                "cos(sqrt(2mE) a / hbar) vanishes");
  }
  const double inner = barrier_factor(state.setup);
  return (inner * inner) / (wall * wall);
}

double transmitted_number_density(const JunctionState& state, double x,
                                  double t, const Tolerances& tol) {
  const ScatteringSetup& s = state.setup;
  const double prefactor = transmitted_prefactor(state, tol);
  const double phase = s.k1 * ((x - s.particle.start_x) -
                               s.particle.speed * (t - s.particle.start_t));
  if (std::abs(phase) >= pi / 2.0) return 0.0;
  const double amplitude = state.normalized ? 2.0 * s.k1 / pi : 1.0;
  const double c = std::cos(phase);
  return prefactor * amplitude * c * c;
}

LosslessCheck lossless_condition(const JunctionState& state, double tol) {
  const ScatteringSetup& s = state.setup;
  LosslessCheck out;
  if (s.regime == Regime::above) {
    const ResonanceCheck check = is_resonant(s, tol);
    out.lossless = check.resonant;
    out.n = check.nearest_n;
    out.lhs = s.k1a();
    out.rhs = s.k2a() + check.nearest_n * pi;
    return out;
  }
  const double c = std::cos(s.k1a());
  const double ch = std::cosh(s.k2a());
  out.lhs = c * c;
  out.rhs = ch * ch;
  out.lossless = std::abs(out.lhs - out.rhs) <= tol;
  return out;
}

FluxRecord quantize_loop(double p1, double p2, const PhysicalContext& ctx,
                         double loop_length) {
  if (!(loop_length > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "loop length must be > 0");
  }
  FluxRecord rec;
  rec.p1 = p1;
  rec.p2 = p2;
  rec.loop_length = loop_length;
  const double winding = (p1 - p2) * loop_length / ctx.hbar();
  rec.n = static_cast<int>(std::lround(winding / pi));
  rec.residual = std::abs(winding - rec.n * pi);
  rec.flux = flux_from_quantum_number(rec.n, ctx);
  return rec;
}

double flux_from_quantum_number(int n, const PhysicalContext& ctx) noexcept {
  return n * pi * ctx.hbar() / ctx.charge();
}

FluxRecord quantize_junction(const ScatteringSetup& setup,
                             double loop_length) {
  if (setup.regime != Regime::above) {
    throw Error(ErrorCode::regime, "junction momenta need E > V0");
  }
  const double hbar = setup.ctx.hbar();
  return quantize_loop(hbar * setup.k1, hbar * setup.k2, setup.ctx,
                       loop_length);
}

}  // namespace qhd

#include "qhdlab/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qhd {
namespace {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 out{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    }
  }
  return out;
}

// (A, B) plane-wave amplitudes -> (psi, psi') at the local origin.
Mat2 to_state(double k) {
  const cplx ik(0.0, k);
  return {{{1.0, 1.0}, {ik, -ik}}};
}

Mat2 to_amplitudes(double k) {
  const cplx ik(0.0, k);
  const cplx inv = 1.0 / (2.0 * ik);
  return {{{ik * inv, 1.0 * inv}, {ik * inv, -1.0 * inv}}};
}

// (psi, psi') across a constant-potential slab of width a.
Mat2 slab(double energy, const Barrier& barrier, const PhysicalContext& ctx) {
  const double a = barrier.width;
  const double q2 =
      2.0 * ctx.mass() * (energy - barrier.height) / (ctx.hbar() * ctx.hbar());
  double c, s_over_q, minus_q_s;
  if (q2 > 0.0) {
    const double q = std::sqrt(q2);
    c = std::cos(q * a);
    s_over_q = std::sin(q * a) / q;
    minus_q_s = -q * std::sin(q * a);
  } else if (q2 < 0.0) {
    const double kappa = std::sqrt(-q2);
    c = std::cosh(kappa * a);
    s_over_q = std::sinh(kappa * a) / kappa;
    minus_q_s = kappa * std::sinh(kappa * a);
  } else {
    c = 1.0;
    s_over_q = a;
    minus_q_s = 0.0;
  }
  return {{{c, s_over_q}, {minus_q_s, c}}};
}

double unwrap_near(double phase, double reference) {
  const double two_pi = 2.0 * pi;
  return phase - two_pi * std::round((phase - reference) / two_pi);
}

double central_phase_time(double energy, const Barrier& barrier,
                          const PhysicalContext& ctx, double dE) {
  const double centre = std::arg(transfer_matrix_amplitude(energy, barrier, ctx));
  const double up = unwrap_near(
      std::arg(transfer_matrix_amplitude(energy + dE, barrier, ctx)), centre);
  const double down = unwrap_near(
      std::arg(transfer_matrix_amplitude(energy - dE, barrier, ctx)), centre);
  return ctx.hbar() * (up - down) / (2.0 * dE);
}

}  // namespace

double analytic_transmission(double energy, const Barrier& barrier,
                             const PhysicalContext& ctx) {
  const double v0 = barrier.height;
  const double a = barrier.width;
  const double hbar = ctx.hbar();
  const double m = ctx.mass();
  if (energy == v0) {
    return 1.0 / (1.0 + m * v0 * a * a / (2.0 * hbar * hbar));
  }
  const double k = std::sqrt(2.0 * m * std::abs(energy - v0)) / hbar;
  if (energy > v0) {
    const double s = std::sin(k * a);
    return 1.0 / (1.0 + v0 * v0 * s * s / (4.0 * energy * (energy - v0)));
  }
  const double sh = std::sinh(k * a);
  return 1.0 / (1.0 + v0 * v0 * sh * sh / (4.0 * energy * (v0 - energy)));
}

ScatteringAmplitudes transfer_matrix_amplitudes(double energy,
                                                const Barrier& barrier,
                                                const PhysicalContext& ctx) {
  if (!(energy > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "oracle energy must be > 0");
  }
  const double k = std::sqrt(2.0 * ctx.mass() * energy) / ctx.hbar();
  // left amplitudes -> right amplitudes, each in wall-local coordinates
  const Mat2 total = to_amplitudes(k) * slab(energy, barrier, ctx) * to_state(k);
  // (t, 0) = total * (1, r); det(total) = det(slab) = 1, so t = 1 / total[1][1]
  ScatteringAmplitudes out;
  out.reflected = -total[1][0] / total[1][1];
  out.transmitted = 1.0 / total[1][1];
  return out;
}

WignerTime wigner_phase_time(double energy, const Barrier& barrier,
                             const PhysicalContext& ctx, double dE) {
  if (!(dE > 0.0) || !(energy - dE > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "Wigner step needs 0 < dE < E");
  }
  const double v0 = barrier.height;
  if ((energy - dE - v0) * (energy + dE - v0) <= 0.0) {
    throw Error(ErrorCode::regime_straddle,
                "finite-difference window reaches E = V0");
  }
  WignerTime out;
  out.value = central_phase_time(energy, barrier, ctx, dE);
  out.error_estimate =
      std::abs(out.value - central_phase_time(energy, barrier, ctx, dE / 2.0));
  return out;
}

OracleResult evaluate_oracle(double energy, const Barrier& barrier,
                             const PhysicalContext& ctx, double rel_step) {
  OracleResult out;
  const ScatteringAmplitudes amp =
      transfer_matrix_amplitudes(energy, barrier, ctx);
  out.transmission = analytic_transmission(energy, barrier, ctx);
  out.reflection = std::norm(amp.reflected);
  out.amplitude_phase = std::arg(amp.transmitted);
  const double gap = std::abs(energy - barrier.height);
  const double span = barrier.height > 0.0 ? std::min(energy, gap) : energy;
  if (span > 0.0) {
    try {
      const WignerTime w = wigner_phase_time(energy, barrier, ctx, rel_step * span);
      out.wigner_time = w.value;
      out.wigner_error = w.error_estimate;
    } catch (const Error&) {
      out.wigner_time.reset();
    }
  }
  return out;
}

ComparisonRecord compare_report(const ScatteringSetup& setup,
                                const Tolerances& tol, double rel_step) {
  ComparisonRecord rec;
  rec.soliton_time = traversal_time(setup, tol);
  try {
    rec.soliton_ratio = solve_regions(setup, 1.0, tol).rho3;
  } catch (const Error&) {
    rec.soliton_ratio.reset();
  }
  if (setup.regime == Regime::above) {
    const ResonanceCheck check = is_resonant(setup, tol.resonance);
    rec.soliton_residual = check.residual;
    rec.soliton_n = check.nearest_n;
    rec.soliton_resonant = check.resonant;
  }

  const double energy = setup.particle.energy;
  rec.oracle = evaluate_oracle(energy, setup.barrier, setup.ctx, rel_step);
  if (setup.barrier.height == 0.0) {
    rec.oracle_residual = 0.0;
  } else if (setup.regime == Regime::above) {
    rec.oracle_residual = std::abs(std::sin(setup.k2a()));
  }
  rec.oracle_resonant =
      rec.oracle_residual && *rec.oracle_residual < tol.resonance;
  return rec;
}

}  // namespace qhd

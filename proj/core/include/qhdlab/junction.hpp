#pragma once

// Josephson-like junction: transmitted number density, lossless-conduction
// conditions and flux quantization from the soliton resonance condition.

#include <optional>

#include "qhdlab/scattering.hpp"

namespace qhd {

/// The insulator is the barrier of setup (V0 = junction potential,
/// a = insulator width). When normalized the incident amplitude is 2 k1/pi so
/// the incident density integrates to 1 over one support width; otherwise the
/// incident amplitude is 1.
struct JunctionState {
  ScatteringSetup setup;
  bool normalized = false;
};

/// D(k2 a)^2 / cos^2(k1 a), the ratio multiplying the incident profile.
/// Throws matching_singularity when |cos(k1 a)| < tol.singularity.
double transmitted_prefactor(const JunctionState& state,
                             const Tolerances& tol = {});

/// prefactor * amplitude * cos^2(k1 (x - c t)) on the compact support
/// |k1 (x - c t)| < pi/2, zero elsewhere.
double transmitted_number_density(const JunctionState& state, double x,
                                  double t, const Tolerances& tol = {});

struct LosslessCheck {
  bool lossless = false;
  double lhs = 0.0;  // k1 a above; cos^2(k1 a) below and at E = V0
  double rhs = 0.0;  // k2 a + n pi above; cosh^2(k2 a) below and at E = V0
  std::optional<int> n;
};

/// Above the barrier: (k1 - k2) a = n pi within tol. Otherwise the literal
/// cos^2(k1 a) == cosh^2(k2 a) comparison, which has real solutions only at
/// k2 = 0.
LosslessCheck lossless_condition(const JunctionState& state, double tol);

struct FluxRecord {
  double p1 = 0.0;
  double p2 = 0.0;
  double loop_length = 2.0 * pi;
  int n = 0;
  double flux = 0.0;
  double residual = 0.0;  // |(p1 - p2) L / hbar - n pi|
};

/// Phase winding (p1 - p2) L / hbar rounded to the nearest multiple of pi.
/// The sign of n carries the orientation of the loop.
FluxRecord quantize_loop(double p1, double p2, const PhysicalContext& ctx,
                         double loop_length = 2.0 * pi);

/// n pi hbar / q. No Cooper-pair factor of 2 is applied.
double flux_from_quantum_number(int n, const PhysicalContext& ctx) noexcept;

/// Momenta sqrt(2mE) and sqrt(2m(E - V0)) for an above-barrier setup.
/// Throws regime otherwise.
FluxRecord quantize_junction(const ScatteringSetup& setup,
                             double loop_length = 2.0 * pi);

}  // namespace qhd

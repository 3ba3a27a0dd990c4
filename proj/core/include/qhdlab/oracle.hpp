#pragma once

// Standard linear quantum mechanics for the same rectangular barrier. Kept
// apart from the soliton model: nothing here feeds back into it.

#include <complex>
#include <optional>

#include "qhdlab/chronometry.hpp"

namespace qhd {

/// Closed-form |t|^2 for a plane wave of energy E on the barrier, including
/// the E = V0 limit 1 / (1 + m V0 a^2 / (2 hbar^2)).
double analytic_transmission(double energy, const Barrier& barrier,
                             const PhysicalContext& ctx);

struct ScatteringAmplitudes {
  /// Transmitted amplitude at the right wall per unit incident amplitude at
  /// the left wall. For V0 = 0 this is exp(i k a).
  std::complex<double> transmitted;
  std::complex<double> reflected;
};

/// Product of the plane-wave/(psi, psi') interface matrices and the slab
/// propagator; valid in all three regimes.
ScatteringAmplitudes transfer_matrix_amplitudes(double energy,
                                                const Barrier& barrier,
                                                const PhysicalContext& ctx);

inline std::complex<double> transfer_matrix_amplitude(
    double energy, const Barrier& barrier, const PhysicalContext& ctx) {
  return transfer_matrix_amplitudes(energy, barrier, ctx).transmitted;
}

struct OracleResult {
  double transmission = 0.0;
  double reflection = 0.0;
  double amplitude_phase = 0.0;
  std::optional<double> wigner_time;
  std::optional<double> wigner_error;
};

struct WignerTime {
  double value = 0.0;
  double error_estimate = 0.0;  // |tau(dE) - tau(dE/2)|
};

/// hbar d(arg t)/dE by a central difference of step dE, unwrapping each
/// phase onto the branch nearest arg t(E).
/// Throws regime_straddle when [E - dE, E + dE] reaches V0 and
/// invalid_argument when E - dE <= 0.
WignerTime wigner_phase_time(double energy, const Barrier& barrier,
                             const PhysicalContext& ctx, double dE);

/// Transmission, reflection, phase and (when the regime allows) the Wigner
/// time with a step of rel_step * min(E, |E - V0|).
OracleResult evaluate_oracle(double energy, const Barrier& barrier,
                             const PhysicalContext& ctx,
                             double rel_step = 1e-5);

/// Soliton-model predictions next to the standard ones for one setup.
struct ComparisonRecord {
  TunnelingReport soliton_time;
  std::optional<double> soliton_ratio;     // rho3 / rho1, unset when singular
  std::optional<double> soliton_residual;  // |(k1 - k2) a - n pi|, above only
  std::optional<int> soliton_n;
  bool soliton_resonant = false;

  OracleResult oracle;
  std::optional<double> oracle_residual;  // |sin(k2 a)|, 0 without barrier
  bool oracle_resonant = false;

  bool resonances_agree() const noexcept {
    return soliton_resonant == oracle_resonant;
  }
};

ComparisonRecord compare_report(const ScatteringSetup& setup,
                                const Tolerances& tol = {},
                                double rel_step = 1e-5);

}  // namespace qhd

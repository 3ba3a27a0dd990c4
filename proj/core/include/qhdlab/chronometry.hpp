#pragma once

// Arrival, traversal and tunneling times of a soliton crossing the barrier,
// and the position-momentum bound that follows from t3 >= 0.
//
// Positions are measured from the left barrier wall, so a translated barrier
// gives the same times as one at the origin. Above the barrier the
// barrier-region factor is cos(k2 a); below it is cosh(k2 a).

#include <optional>
#include <string_view>

#include "qhdlab/scattering.hpp"

namespace qhd {

enum class TimeStatus { ok, out_of_domain, singular };

std::string_view to_string(TimeStatus status) noexcept;

struct TunnelingReport {
  std::optional<double> total_time;      // t3, unset when status != ok
  double classical_time = 0.0;           // a / c
  std::optional<double> tunneling_time;  // tau = |t3 - a/c|
  double arccos_argument = 0.0;          // cos(k1 a) / D(k2 a)
  bool in_domain = false;
  bool resonant = false;
  std::optional<int> resonance_index;
  /// Resonant with odd n: the argument is -1 and tau = pi/(k3 c), not 0.
  bool odd_resonance = false;
  TimeStatus status = TimeStatus::ok;
};

/// cos(k1 a)/D(k2 a) * cos(k1 (x1 - c t1)).
/// Throws matching_singularity when |cos(k2 a)| < tol.singularity above the
/// barrier.
double arrival_argument(const ScatteringSetup& setup, double x1, double t1,
                        const Tolerances& tol = {});

/// t3 = x3/c - arccos(arrival_argument)/(k3 c) on the principal branch.
/// Arguments within tol.equality of +-1 are snapped onto the boundary;
/// anything further out throws arccos_domain.
double arrival_time(const ScatteringSetup& setup, double x1, double t1,
                    double x3, const Tolerances& tol = {});

/// Arrival at the right wall for a soliton leaving the left wall at t = 0.
/// Domain failures are reported through status instead of thrown.
TunnelingReport traversal_time(const ScatteringSetup& setup,
                               const Tolerances& tol = {});

/// tau = arccos(cos(k1 a)/D(k2 a)) / (k3 c), in [0, pi/(k3 c)].
/// Throws arccos_domain or matching_singularity.
double tunneling_time(const ScatteringSetup& setup,
                      const Tolerances& tol = {});

/// Smallest x3 (from the left wall) with t3 >= 0:
/// arccos(arrival_argument) / k3. Never exceeds pi / k3.
double min_transmitted_distance(const ScatteringSetup& setup, double x1,
                                double t1, const Tolerances& tol = {});

struct UncertaintyRecord {
  double delta_x = 0.0;
  double delta_k = 0.0;
  double delta_p = 0.0;
  double product = 0.0;
};

/// Requires delta_x >= pi / delta_k (throws bound_violation otherwise), so
/// the product is at least pi * hbar = h / 2.
UncertaintyRecord uncertainty_product(double delta_k, double delta_x,
                                      const PhysicalContext& ctx);

}  // namespace qhd

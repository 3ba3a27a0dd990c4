#include "qhdlab/chronometry.hpp"

#include <cmath>
#include <string>

namespace qhd {
namespace {

double principal_arccos(double arg, const Tolerances& tol) {
  if (!(std::abs(arg) <= 1.0 + tol.equality)) {
    throw Error(ErrorCode::arccos_domain,
                "arrival-time argument " + std::to_string(arg) +
                    " lies outside [-1, 1]");
  }
  if (std::abs(std::abs(arg) - 1.0) <= tol.equality) {
    return arg > 0.0 ? 0.0 : pi;
  }
  return std::acos(arg);
}

double wall_ratio(const ScatteringSetup& setup, const Tolerances& tol) {
  const double inner = barrier_factor(setup);
  if (setup.regime == Regime::above && std::abs(inner) < tol.singularity) {
    throw Error(ErrorCode::matching_singularity,
                "cos(k2 a) vanishes (k2 a = " + std::to_string(setup.k2a()) +
                    ")");
  }
  return std::cos(setup.k1a()) / inner;
}

}  // namespace

std::string_view to_string(TimeStatus status) noexcept {
  switch (status) {
    case TimeStatus::ok: return "ok";
    case TimeStatus::out_of_domain: return "out_of_domain";
    case TimeStatus::singular: return "singular";
  }
  return "unknown";
}

double arrival_argument(const ScatteringSetup& setup, double x1, double t1,
                        const Tolerances& tol) {
  const double c = setup.particle.speed;
  const double x = x1 - setup.barrier.origin;
  return wall_ratio(setup, tol) * std::cos(setup.k1 * (x - c * t1));
}

double arrival_time(const ScatteringSetup& setup, double x1, double t1,
                    double x3, const Tolerances& tol) {
  if (x3 < setup.barrier.right_wall()) {
    throw Error(ErrorCode::invalid_argument,
                "arrival point must lie at or beyond the right wall");
  }
  const double c = setup.particle.speed;
  const double angle = principal_arccos(arrival_argument(setup, x1, t1, tol), tol);
  return (x3 - setup.barrier.origin) / c - angle / (setup.k3 * c);
}

TunnelingReport traversal_time(const ScatteringSetup& setup,
                               const Tolerances& tol) {
  TunnelingReport report;
  const double c = setup.particle.speed;
  const double a = setup.barrier.width;
  report.classical_time = a / c;

  if (setup.regime == Regime::above) {
    const ResonanceCheck check = is_resonant(setup, tol.resonance);
    report.resonant = check.resonant;
    if (check.resonant) {
      report.resonance_index = check.nearest_n;
      report.odd_resonance = check.nearest_n % 2 != 0;
    }
  }

  const double inner = barrier_factor(setup);
  if (setup.regime == Regime::above && std::abs(inner) < tol.singularity) {
    report.status = TimeStatus::singular;
    report.arccos_argument = std::cos(setup.k1a()) / inner;
    return report;
  }
  report.arccos_argument = std::cos(setup.k1a()) / inner;
  if (!(std::abs(report.arccos_argument) <= 1.0 + tol.equality)) {
    report.status = TimeStatus::out_of_domain;
    return report;
  }
  report.in_domain = true;
  const double angle = principal_arccos(report.arccos_argument, tol);
  const double delay = angle / (setup.k3 * c);
  report.total_time = report.classical_time - delay;
  report.tunneling_time = delay;
  return report;
}

double tunneling_time(const ScatteringSetup& setup, const Tolerances& tol) {
  const double angle = principal_arccos(wall_ratio(setup, tol), tol);
  return angle / (setup.k3 * setup.particle.speed);
}

double min_transmitted_distance(const ScatteringSetup& setup, double x1,
                                double t1, const Tolerances& tol) {
  const double angle =
      principal_arccos(arrival_argument(setup, x1, t1, tol), tol);
  return angle / setup.k3;
}

UncertaintyRecord uncertainty_product(double delta_k, double delta_x,
                                      const PhysicalContext& ctx) {
  if (!(delta_k > 0.0) || !(delta_x > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "delta_k and delta_x must be > 0");
  }
  if (delta_x < pi / delta_k) {
    throw Error(ErrorCode::bound_violation,
                "delta_x = " + std::to_string(delta_x) +
                    " is below pi/delta_k = " + std::to_string(pi / delta_k));
  }
  UncertaintyRecord record;
  record.delta_x = delta_x;
  record.delta_k = delta_k;
  record.delta_p = ctx.hbar() * delta_k;
  record.product = delta_x * record.delta_p;
  return record;
}

}  // namespace qhd

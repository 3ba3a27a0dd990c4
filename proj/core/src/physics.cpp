#include "qhdlab/physics.hpp"

#include <cmath>
#include <string>

namespace qhd {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::degenerate_energy: return "degenerate_energy";
    case ErrorCode::insufficient_grid: return "insufficient_grid";
    case ErrorCode::zero_density: return "zero_density";
    case ErrorCode::matching_singularity: return "singular";
    case ErrorCode::arccos_domain: return "out_of_domain";
    case ErrorCode::regime: return "regime";
    case ErrorCode::regime_straddle: return "regime_straddle";
    case ErrorCode::bound_violation: return "bound_violation";
  }
  return "unknown";
}

std::string_view to_string(UnitSystem units) noexcept {
  return units == UnitSystem::natural ? "natural" : "SI";
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::above: return "above";
    case Regime::below: return "below";
    case Regime::critical: return "critical";
  }
  return "unknown";
}

PhysicalContext PhysicalContext::natural(double charge) {
  return make(UnitSystem::natural, 1.0, 1.0, charge);
}

PhysicalContext PhysicalContext::si(double mass, double charge) {
  return make(UnitSystem::si, 1.054571817e-34, mass, charge);
}

PhysicalContext PhysicalContext::make(UnitSystem units, double hbar,
                                      double mass, double charge) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(hbar) || !positive(mass) || !positive(charge)) {
    throw Error(ErrorCode::invalid_argument,
                "physical context requires finite hbar, mass, charge > 0");
  }
  if (units == UnitSystem::natural && (hbar != 1.0 || mass != 1.0)) {
    throw Error(ErrorCode::invalid_argument,
                "natural units fix hbar = mass = 1");
  }
  return PhysicalContext(units, hbar, mass, charge);
}

void validate(const Barrier& barrier) {
  if (!(std::isfinite(barrier.width) && barrier.width > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "barrier width must be > 0");
  }
  if (!std::isfinite(barrier.height) || !std::isfinite(barrier.origin)) {
    throw Error(ErrorCode::invalid_argument,
                "barrier height and origin must be finite");
  }
}

void validate(const ParticleState& particle) {
  if (!(std::isfinite(particle.energy) && particle.energy > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "particle energy must be > 0");
  }
  if (!(std::isfinite(particle.speed) && particle.speed > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "particle speed must be > 0");
  }
  if (!std::isfinite(particle.start_x) || !std::isfinite(particle.start_t)) {
    throw Error(ErrorCode::invalid_argument,
                "particle reference coordinates must be finite");
  }
}

Wavenumber wavenumber(double energy, double potential,
                      const PhysicalContext& ctx) {
  const double diff = energy - potential;
  Wavenumber out;
  out.k = std::sqrt(2.0 * ctx.mass() * std::abs(diff)) / ctx.hbar();
  out.regime = diff > 0.0 ? Regime::above
               : diff < 0.0 ? Regime::below
                            : Regime::critical;
  return out;
}

double de_broglie_wavelength(double energy, double potential,
                             const PhysicalContext& ctx) {
  if (!(energy > potential)) {
    throw Error(ErrorCode::degenerate_energy,
                "de Broglie wavelength needs E > V (got E - V = " +
                    std::to_string(energy - potential) + ")");
  }
  return ctx.planck() / std::sqrt(2.0 * ctx.mass() * (energy - potential));
}

}  // namespace qhd

#pragma once

// Unit systems, constants and the parameter types shared by every module.

#include <numbers>
#include <string_view>

#include "qhdlab/error.hpp"

namespace qhd {

inline constexpr double pi = std::numbers::pi;

enum class UnitSystem { natural, si };

std::string_view to_string(UnitSystem units) noexcept;

/// Constants every formula is parameterized by. Construct through
/// natural() / si() / make(); the factories enforce positivity.
class PhysicalContext {
 public:
  /// hbar = m = 1 exactly. The charge stays free because flux results are
  /// quoted per unit charge.
  static PhysicalContext natural(double charge = 1.0);
  /// CODATA 2018 hbar and electron mass/charge unless overridden.
  static PhysicalContext si(double mass = 9.1093837015e-31,
                            double charge = 1.602176634e-19);
  static PhysicalContext make(UnitSystem units, double hbar, double mass,
                              double charge);

  double hbar() const noexcept { return hbar_; }
  double mass() const noexcept { return mass_; }
  double charge() const noexcept { return charge_; }
  UnitSystem units() const noexcept { return units_; }

  double planck() const noexcept { return 2.0 * pi * hbar_; }

 private:
  PhysicalContext(UnitSystem units, double hbar, double mass, double charge)
      : hbar_(hbar), mass_(mass), charge_(charge), units_(units) {}

  double hbar_;
  double mass_;
  double charge_;
  UnitSystem units_;
};

/// Rectangular barrier: height on (origin, origin + width), zero elsewhere.
struct Barrier {
  double width = 1.0;
  double height = 0.0;
  double origin = 0.0;

  double left_wall() const noexcept { return origin; }
  double right_wall() const noexcept { return origin + width; }
  double potential_at(double x) const noexcept {
    return (x > origin && x < origin + width) ? height : 0.0;
  }
};

/// Throws invalid_argument unless width > 0 and every field is finite.
void validate(const Barrier& barrier);

struct ParticleState {
  double energy = 0.5;
  double speed = 1.0;
  double start_x = 0.0;
  double start_t = 0.0;
};

void validate(const ParticleState& particle);

enum class Regime { above, below, critical };

std::string_view to_string(Regime regime) noexcept;

struct Wavenumber {
  double k = 0.0;
  Regime regime = Regime::critical;
};

/// k = sqrt(2m|E - V|)/hbar tagged with the sign of E - V. E == V gives
/// k = 0 and Regime::critical; callers decide whether that is degenerate.
Wavenumber wavenumber(double energy, double potential,
                      const PhysicalContext& ctx);

/// h / sqrt(2m(E - V)). Throws degenerate_energy when E <= V.
double de_broglie_wavelength(double energy, double potential,
                             const PhysicalContext& ctx);

/// Free-particle speed hbar*k/m for wavenumber k.
inline double particle_speed(double k, const PhysicalContext& ctx) noexcept {
  return ctx.hbar() * k / ctx.mass();
}

/// Numerical thresholds shared by the scattering, chronometry and junction
/// code paths. Defaults match the command-line defaults.
struct Tolerances {
  double resonance = 1e-9;    // |(k1 - k2)a - n*pi| and relative rho3 == rho1
  double singularity = 1e-12; // |cos| below this is a matching pole
  double equality = 1e-12;    // slack on |arccos argument| <= 1
};

}  // namespace qhd

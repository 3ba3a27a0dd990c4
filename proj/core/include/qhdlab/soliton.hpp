#pragma once

// Compact cos^2 quantum-density soliton and finite-difference checks that it
// solves the continuity and momentum equations of quantum hydrodynamics.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qhdlab/physics.hpp"

namespace qhd {

/// rho(x, t) = amplitude * cos^exponent(wavenumber * xi) for
/// |wavenumber * xi| < pi/2 and exactly zero elsewhere, where
/// xi = (x - center_x) - speed * (t - center_t).
///
/// build_soliton() always produces exponent 2. Other exponents describe
/// traveling profiles that are *not* solutions and exist so the residual
/// checks can be shown to discriminate.
struct Soliton {
  double amplitude = 1.0;
  double wavenumber = 1.0;
  double speed = 1.0;
  double center_x = 0.0;
  double center_t = 0.0;
  double exponent = 2.0;

  double xi(double x, double t) const noexcept {
    return (x - center_x) - speed * (t - center_t);
  }
  /// pi / wavenumber, half the de Broglie wavelength.
  double support_width() const noexcept { return pi / wavenumber; }
  /// Position of the density peak at time t.
  double peak_position(double t) const noexcept {
    return center_x + speed * (t - center_t);
  }
};

/// Wavenumber sqrt(2m(E - V))/hbar from Q0 = E - V. The speed defaults to
/// the de Broglie particle speed hbar*mu/m.
/// Throws degenerate_energy when E <= V.
Soliton build_soliton(double energy, double potential,
                      const PhysicalContext& ctx, double amplitude = 1.0,
                      std::optional<double> speed = std::nullopt,
                      double center_x = 0.0, double center_t = 0.0);

/// Copy of s with a different profile exponent (4 gives the cos^4 foil).
Soliton with_exponent(Soliton s, double exponent);

double density_at(const Soliton& s, double x, double t) noexcept;

/// Closed-form integral of the density over its support.
double integrated_density(const Soliton& s);

/// Rescales the amplitude so the support integral is 1.
Soliton normalized(Soliton s);

struct DensitySample {
  double x = 0.0;
  double rho = 0.0;
};

/// Uniformly spaced density samples at a single time.
class DensityField {
 public:
  /// Throws invalid_argument for step <= 0 or any negative density.
  DensityField(double x_begin, double step, std::span<const double> densities,
               double time = 0.0);

  std::span<const DensitySample> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double step() const noexcept { return step_; }
  double time() const noexcept { return time_; }

 private:
  std::vector<DensitySample> samples_;
  double step_;
  double time_;
};

/// n points spanning [x_begin, x_end] inclusive.
DensityField sample_density(const Soliton& s, double time, double x_begin,
                            double x_end, std::size_t n);

/// n points spanning the closed support at time t (endpoints carry rho = 0).
DensityField sample_support(const Soliton& s, double time, std::size_t n);

struct QuantumPotentialSample {
  double x = 0.0;
  double q = 0.0;
};

/// Q = -(hbar^2/2m) (sqrt rho)'' / sqrt rho with a three-point central
/// difference on sqrt rho. Points whose stencil has any density at or below
/// floor_fraction * max(rho) are skipped.
///
/// Throws insufficient_grid for fewer than 5 samples and zero_density when
/// fewer than 5 points survive the positivity floor.
std::vector<QuantumPotentialSample> quantum_potential_numeric(
    const DensityField& field, const PhysicalContext& ctx,
    double floor_fraction = 1e-12);

/// max |d rho/dt + c d rho/dx| over the interior of a grid_points-point grid
/// spanning the support at center_t; time derivative from rho(t +- dt).
/// Throws insufficient_grid for grid_points < 16 and invalid_argument for
/// dt <= 0.
double residual_continuity(const Soliton& s, std::size_t grid_points,
                           double dt = 1e-4);

/// Momentum-balance residual for u = c and constant V, i.e. the quantum
/// force density rho * dQ/dx, evaluated in conservative form
///   rho dQ/dx = -(hbar^2/4m) d/dx (rho'' - rho'^2/rho)
/// with nested central differences on the support grid. Reports the max
/// magnitude over points where rho exceeds 1e-12 * amplitude.
/// Throws insufficient_grid for grid_points < 16.
double residual_momentum(const Soliton& s, std::size_t grid_points,
                         const PhysicalContext& ctx);

}  // namespace qhd

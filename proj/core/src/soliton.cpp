#include "qhdlab/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qhd {
namespace {

// The residual stencils go up to a third derivative, so their roundoff grows
// like eps/h^3. Sampling in long double keeps the truncation error visible
// at the grid sizes the convergence checks use.
using wide = long double;

template <class T>
T profile(const Soliton& s, T x, T t) {
  const T xi = (x - T(s.center_x)) - T(s.speed) * (t - T(s.center_t));
  const T phase = T(s.wavenumber) * xi;
  if (std::abs(phase) >= std::numbers::pi_v<T> / 2) return T(0);
  const T c = std::cos(phase);
  if (s.exponent == 2.0) return T(s.amplitude) * c * c;
  return T(s.amplitude) * std::pow(c, T(s.exponent));
}

struct SupportGrid {
  wide left;
  wide step;
  std::size_t n;
  wide at(std::size_t j) const { return left + step * static_cast<wide>(j); }
};

SupportGrid support_grid(const Soliton& s, std::size_t n) {
  const wide width = std::numbers::pi_v<wide> / wide(s.wavenumber);
  const wide peak = wide(s.center_x);  // peak position at t = center_t
  return {peak - width / 2, width / static_cast<wide>(n - 1), n};
}

void require_grid(std::size_t grid_points) {
  if (grid_points < 16) {
    throw Error(ErrorCode::insufficient_grid,
                "residual checks need at least 16 grid points");
  }
}

}  // namespace

Soliton build_soliton(double energy, double potential,
                      const PhysicalContext& ctx, double amplitude,
                      std::optional<double> speed, double center_x,
                      double center_t) {
  if (!(energy > potential)) {
    throw Error(ErrorCode::degenerate_energy,
                "compact soliton needs Q0 = E - V > 0");
  }
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw Error(ErrorCode::invalid_argument, "amplitude must be >= 0");
  }
  Soliton s;
  s.amplitude = amplitude;
  s.wavenumber = wavenumber(energy, potential, ctx).k;
  s.speed = speed.value_or(particle_speed(s.wavenumber, ctx));
  s.center_x = center_x;
  s.center_t = center_t;
  return s;
}

Soliton with_exponent(Soliton s, double exponent) {
  if (!(exponent > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "profile exponent must be > 0");
  }
  s.exponent = exponent;
  return s;
}

double density_at(const Soliton& s, double x, double t) noexcept {
  return profile<double>(s, x, t);
}

double integrated_density(const Soliton& s) {
  if (s.exponent == 2.0) return s.amplitude * pi / (2.0 * s.wavenumber);
  // integral of cos^b over (-pi/2, pi/2) is sqrt(pi) G((b+1)/2) / G(b/2 + 1)
  const double b = s.exponent;
  const double shape =
      std::sqrt(pi) * std::tgamma((b + 1.0) / 2.0) / std::tgamma(b / 2.0 + 1.0);
  return s.amplitude * shape / s.wavenumber;
}

Soliton normalized(Soliton s) {
  s.amplitude = 1.0;
  s.amplitude = 1.0 / integrated_density(s);
  return s;
}

DensityField::DensityField(double x_begin, double step,
                           std::span<const double> densities, double time)
    : step_(step), time_(time) {
  if (!(step > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "grid step must be > 0");
  }
  samples_.reserve(densities.size());
  for (std::size_t i = 0; i < densities.size(); ++i) {
    if (!(densities[i] >= 0.0)) {
      throw Error(ErrorCode::invalid_argument, "densities must be >= 0");
    }
    samples_.push_back({x_begin + step * static_cast<double>(i), densities[i]});
  }
}

DensityField sample_density(const Soliton& s, double time, double x_begin,
                            double x_end, std::size_t n) {
  if (n < 2 || !(x_end > x_begin)) {
    throw Error(ErrorCode::invalid_argument,
                "sampling needs n >= 2 and x_end > x_begin");
  }
  const double step = (x_end - x_begin) / static_cast<double>(n - 1);
  std::vector<double> rho(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] = density_at(s, x_begin + step * static_cast<double>(i), time);
  }
  return DensityField(x_begin, step, rho, time);
}

DensityField sample_support(const Soliton& s, double time, std::size_t n) {
  const double half = s.support_width() / 2.0;
  const double peak = s.peak_position(time);
  return sample_density(s, time, peak - half, peak + half, n);
}

std::vector<QuantumPotentialSample> quantum_potential_numeric(
    const DensityField& field, const PhysicalContext& ctx,
    double floor_fraction) {
  const auto samples = field.samples();
  if (samples.size() < 5) {
    throw Error(ErrorCode::insufficient_grid,
                "quantum potential needs at least 5 samples");
  }
  double peak = 0.0;
  for (const auto& p : samples) peak = std::max(peak, p.rho);
  const double floor = floor_fraction * peak;
  const double h = field.step();
  const double scale = -ctx.hbar() * ctx.hbar() / (2.0 * ctx.mass());

  std::vector<QuantumPotentialSample> out;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const double lo = samples[i - 1].rho;
    const double mid = samples[i].rho;
    const double hi = samples[i + 1].rho;
    if (!(lo > floor && mid > floor && hi > floor)) continue;
    const double root = std::sqrt(mid);
    const double curvature =
        (std::sqrt(hi) - 2.0 * root + std::sqrt(lo)) / (h * h);
    out.push_back({samples[i].x, scale * curvature / root});
  }
  if (out.size() < 5) {
    throw Error(ErrorCode::zero_density,
                "fewer than 5 stencils lie strictly inside the support");
  }
  return out;
}

double residual_continuity(const Soliton& s, std::size_t grid_points,
                           double dt) {
  require_grid(grid_points);
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "time step must be > 0");
  }
  const SupportGrid grid = support_grid(s, grid_points);
  const wide t0 = s.center_t;
  const wide tau = dt;
  const wide c = s.speed;

  wide worst = 0;
  for (std::size_t j = 1; j + 1 < grid.n; ++j) {
    const wide x = grid.at(j);
    const wide drho_dt =
        (profile(s, x, t0 + tau) - profile(s, x, t0 - tau)) / (2 * tau);
    const wide drho_dx =
        (profile(s, grid.at(j + 1), t0) - profile(s, grid.at(j - 1), t0)) /
        (2 * grid.step);
    worst = std::max(worst, std::abs(drho_dt + c * drho_dx));
  }
  return static_cast<double>(worst);
}

double residual_momentum(const Soliton& s, std::size_t grid_points,
                         const PhysicalContext& ctx) {
  require_grid(grid_points);
  const SupportGrid grid = support_grid(s, grid_points);
  const wide h = grid.step;
  const wide t0 = s.center_t;
  const wide floor = wide(1e-12) * wide(s.amplitude);

  std::vector<wide> rho(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) rho[j] = profile(s, grid.at(j), t0);

  // stress[j] = rho'' - rho'^2 / rho, defined where rho is above the floor
  std::vector<std::optional<wide>> stress(grid.n);
  for (std::size_t j = 1; j + 1 < grid.n; ++j) {
    if (!(rho[j] > floor)) continue;
    const wide d1 = (rho[j + 1] - rho[j - 1]) / (2 * h);
    const wide d2 = (rho[j + 1] - 2 * rho[j] + rho[j - 1]) / (h * h);
    stress[j] = d2 - d1 * d1 / rho[j];
  }

  const wide scale = wide(ctx.hbar()) * wide(ctx.hbar()) / (4 * wide(ctx.mass()));
  wide worst = 0;
  std::size_t evaluated = 0;
  for (std::size_t j = 1; j + 1 < grid.n; ++j) {
    if (!stress[j - 1] || !stress[j + 1]) continue;
    const wide force = scale * (*stress[j + 1] - *stress[j - 1]) / (2 * h);
    worst = std::max(worst, std::abs(force));
    ++evaluated;
  }
  if (evaluated == 0) {
    throw Error(ErrorCode::zero_density,
                "no momentum stencil lies strictly inside the support");
  }
  return static_cast<double>(worst);
}

}  // namespace qhd

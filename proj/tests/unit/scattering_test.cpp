#include <doctest.h>

#include <cmath>
#include <random>

#include "qhdlab/scattering.hpp"

using namespace qhd;

namespace {

const auto nat = PhysicalContext::natural();

// k1 a = pi/3, k2 a = pi/6 with m = hbar = 1.
ScatteringSetup third_sixth() {
  return make_setup(ParticleState{0.5, 1.0, 0.0, 0.0}, Barrier{pi / 3, 0.375, 0.0}, nat);
}

}  // namespace

TEST_CASE("setup wavenumbers") {
  const ScatteringSetup s = third_sixth();
  CHECK(s.k1 == doctest::Approx(1.0));
  CHECK(s.k3 == s.k1);
  CHECK(s.k1a() == doctest::Approx(pi / 3).epsilon(1e-15));
  CHECK(s.k2a() == doctest::Approx(pi / 6).epsilon(1e-15));
  CHECK(s.regime == Regime::above);
  CHECK_THROWS_AS(make_setup(ParticleState{0.0, 1.0, 0.0, 0.0}, Barrier{}, nat), Error);
}

TEST_CASE("region densities above the barrier") {
  const ScatteringSolution sol = solve_regions(third_sixth(), 1.0);
  CHECK(sol.rho2 == 1.0);
  CHECK(sol.rho3 == doctest::Approx(3.0).epsilon(1e-13));
  CHECK_FALSE(sol.resonant);
  CHECK(sol.amplitude_ratio() == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("region densities below the barrier") {
  // k1 a = pi/3, k2 a = 1 below: rho3 = cosh^2(1) / cos^2(pi/3).
  const double a = pi / 3;
  const double e = 0.5;
  const double v0 = e + 0.5 / (a * a);
  const auto s = make_setup(ParticleState{e, 1.0, 0.0, 0.0}, Barrier{a, v0, 0.0}, nat);
  CHECK(s.regime == Regime::below);
  CHECK(s.k2a() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(solve_regions(s, 1.0).rho3 == doctest::Approx(9.524391382167263).epsilon(1e-12));
}

TEST_CASE("critical regime uses a unit barrier factor") {
  const auto s = make_setup(ParticleState{1.0, 1.0, 0.0, 0.0}, Barrier{0.5, 1.0, 0.0}, nat);
  CHECK(s.regime == Regime::critical);
  CHECK(barrier_factor(s) == 1.0);
}

TEST_CASE("matching singularity at cos(k1 a) = 0") {
  const auto s = make_setup(ParticleState{0.5, 1.0, 0.0, 0.0}, Barrier{pi / 2, 0.1, 0.0}, nat);
  try {
    solve_regions(s, 1.0);
    FAIL("expected matching_singularity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::matching_singularity);
  }
}

TEST_CASE("resonance check example") {
  // E = 1, a = pi, V0 = sqrt(2) - 1/2: k1 a = sqrt(2) pi, k2 a = (sqrt(2) - 1) pi.
  const auto s = make_setup(ParticleState{1.0, 1.0, 0.0, 0.0},
                            Barrier{pi, 0.9142135623730951, 0.0}, nat);
  const ResonanceCheck r = is_resonant(s, 1e-9);
  CHECK(r.resonant);
  CHECK(r.nearest_n == 1);
  CHECK(r.residual < 1e-12);
  CHECK(solve_regions(s, 2.0).resonant);

  const auto below = make_setup(ParticleState{0.5, 1.0, 0.0, 0.0}, Barrier{1.0, 1.0, 0.0}, nat);
  CHECK_THROWS_AS(is_resonant(below, 1e-9), Error);
}

TEST_CASE("resonance energies solve the winding condition") {
  const Barrier b{10.0, 1.0, 0.0};
  // sqrt(2) * 10 / pi = 4.50: roots n = 1..4.
  for (int n = 1; n <= 4; ++n) {
    const auto e = resonance_energies(b, n, nat);
    REQUIRE(e.has_value());
    CHECK(*e > b.height);
    CHECK(std::abs(resonance_function(*e, b, n, nat)) < 1e-9);
  }
  CHECK_FALSE(resonance_energies(b, 5, nat).has_value());
  CHECK_THROWS_AS(resonance_energies(b, 0, nat), Error);

  const auto roots = resonance_roots_between(b, 1.0, 10.0, nat);
  REQUIRE(roots.size() == 4);
  for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i].energy < roots[i - 1].energy);
}

TEST_CASE("resonant setups recover the incident density") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  while (tested < 200) {
    const double a = 0.5 + 10.0 * u(rng);
    const double v0 = 0.1 + 5.0 * u(rng);
    const int max_n = static_cast<int>(std::floor(std::sqrt(2.0 * v0) * a / pi));
    if (max_n < 1) continue;
    const int n = 1 + static_cast<int>(u(rng) * max_n) % max_n;
    const Barrier b{a, v0, 0.0};
    const auto e = resonance_energies(b, n, nat);
    REQUIRE(e.has_value());
    const auto s = make_setup(ParticleState{*e, 1.0, 0.0, 0.0}, b, nat);
    if (std::abs(std::cos(s.k1a())) <= 1e-6) continue;
    const ScatteringSolution sol = solve_regions(s, 1.0);
    CHECK(std::abs(sol.rho3 - sol.rho1) <= 1e-10 * sol.rho1);
    ++tested;
  }
}

TEST_CASE("density ratio is non-negative and scales with rho1") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.05, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const auto s = make_setup(ParticleState{u(rng), 1.0, 0.0, 0.0},
                              Barrier{u(rng), u(rng), 0.0}, nat);
    if (std::abs(std::cos(s.k1a())) < 1e-6) continue;
    const double rho1 = u(rng);
    const auto one = solve_regions(s, 1.0);
    const auto many = solve_regions(s, rho1);
    CHECK(one.rho3 >= 0.0);
    CHECK(many.rho3 == doctest::Approx(rho1 * one.rho3).epsilon(1e-13));
  }
}

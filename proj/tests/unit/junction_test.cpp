#include <doctest.h>

#include <cmath>
#include <random>

#include "qhdlab/junction.hpp"
#include "reference.hpp"

using namespace qhd;

namespace {
const auto nat = PhysicalContext::natural();
}

TEST_CASE("transmitted prefactor and density") {
  const auto s = make_setup(ParticleState{0.5, 1.0, 0.0, 0.0}, Barrier{pi / 3, 0.375, 0.0}, nat);
  const JunctionState plain{s, false};
  CHECK(transmitted_prefactor(plain) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(transmitted_number_density(plain, 0.0, 0.0) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(transmitted_number_density(plain, 2.0, 0.0) == 0.0);
  CHECK(transmitted_number_density(plain, 1.0, 1.0) == doctest::Approx(3.0).epsilon(1e-13));

  const JunctionState norm{s, true};
  const double integral = reference::simpson(
      [&](double x) { return transmitted_number_density(norm, x, 0.0); }, -pi / 2, pi / 2);
  CHECK(integral == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("lossless condition above the barrier") {
  const auto s = make_setup(ParticleState{1.0, 1.0, 0.0, 0.0},
                            Barrier{pi, 0.9142135623730951, 0.0}, nat);
  const LosslessCheck c = lossless_condition(JunctionState{s, false}, 1e-9);
  CHECK(c.lossless);
  REQUIRE(c.n.has_value());
  CHECK(*c.n == 1);
  CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-12));
}

TEST_CASE("lossless condition below the barrier holds only at k2 = 0") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int i = 0; i < 500; ++i) {
    const double e = u(rng);
    const auto s = make_setup(ParticleState{e, 1.0, 0.0, 0.0},
                              Barrier{u(rng), e + u(rng), 0.0}, nat);
    CHECK_FALSE(lossless_condition(JunctionState{s, false}, 1e-9).lossless);
  }
  // E = V0 with k1 a = pi: cos^2(k1 a) = cosh^2(0) = 1.
  const auto crit = make_setup(ParticleState{1.0, 1.0, 0.0, 0.0},
                               Barrier{pi / std::sqrt(2.0), 1.0, 0.0}, nat);
  const LosslessCheck c = lossless_condition(JunctionState{crit, false}, 1e-9);
  CHECK(c.lossless);
  CHECK(c.lhs == doctest::Approx(1.0));
}

TEST_CASE("flux quantization round trip") {
  const auto ctx = PhysicalContext::make(UnitSystem::si, 0.8, 1.0, 2.0);
  for (int n = -10; n <= 10; ++n) {
    const double dp = n * pi * ctx.hbar() / (2.0 * pi);
    const FluxRecord r = quantize_loop(1.0 + dp, 1.0, ctx);
    CHECK(r.n == n);
    CHECK(r.residual < 1e-12);
    CHECK(r.flux == n * pi * ctx.hbar() / ctx.charge());
    CHECK(flux_from_quantum_number(n, ctx) == n * pi * ctx.hbar() / ctx.charge());
  }
}

TEST_CASE("flux is linear in n") {
  const auto ctx = PhysicalContext::natural(3.0);
  const double unit = flux_from_quantum_number(1, ctx);
  for (int n = -50; n <= 50; ++n) {
    CHECK(std::abs(flux_from_quantum_number(n, ctx) - n * unit) <=
          1e-15 * std::abs(n * unit));
  }
}

TEST_CASE("junction quantization needs the above regime") {
  const auto above = make_setup(ParticleState{1.0, 1.0, 0.0, 0.0},
                                Barrier{pi, 0.9142135623730951, 0.0}, nat);
  const FluxRecord r = quantize_junction(above);
  CHECK(r.p1 == doctest::Approx(std::sqrt(2.0)));
  const auto below = make_setup(ParticleState{0.5, 1.0, 0.0, 0.0}, Barrier{1.0, 1.0, 0.0}, nat);
  CHECK_THROWS_AS(quantize_junction(below), Error);
}

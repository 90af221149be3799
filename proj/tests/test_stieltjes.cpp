#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "spectral_clt/errors.hpp"
#include "spectral_clt/stieltjes.hpp"
#include "support/oracles.hpp"

using namespace spectral_clt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("MP support edges", "[stieltjes]") {
  auto s = mp_support(0.25);
  CHECK_THAT(s.lower, WithinAbs(0.25, 1e-15));
  CHECK_THAT(s.upper, WithinAbs(2.25, 1e-15));
  s = mp_support(1.0);
  CHECK(s.lower == 0.0);
  CHECK(s.upper == 4.0);
  CHECK_THROWS_AS(mp_support(0.0), DomainError);
  CHECK_THROWS_AS(mp_support(-1.0), DomainError);
}

TEST_CASE("MP density", "[stieltjes]") {
  const auto s = mp_support(0.5);
  CHECK(mp_density(s.lower, 0.5) == 0.0);
  CHECK(mp_density(s.upper, 0.5) == 0.0);
  CHECK(mp_density(-1.0, 0.5) == 0.0);
  CHECK(mp_density(10.0, 0.5) == 0.0);
  CHECK(mp_density(1.0, 0.5) > 0.0);
  CHECK(mp_atom_at_zero(0.5) == 0.0);
  CHECK(mp_atom_at_zero(1.0) == 0.0);
  CHECK_THAT(mp_atom_at_zero(2.0), WithinAbs(0.5, 1e-15));
}

TEST_CASE("forward map z(m)", "[stieltjes]") {
  CHECK(std::abs(z_of_m(-0.5, 1.0) - 4.0) < 1e-15);
  CHECK(std::abs(z_of_m(-1e6, 0.5)) < 2e-6);
  CHECK(std::abs(z_of_m(-2.0 / 3.0, 0.25) - 2.25) < 1e-14);
  CHECK_THROWS_AS(z_of_m(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(z_of_m(-1.0, 0.5), DomainError);
}

TEST_CASE("spiked forward map", "[stieltjes]") {
  const auto model = SpikedModel::create(200, 400, {{3.0, 1}});
  CHECK(std::abs(z_of_m_spiked(-0.5, model) - 2.98) < 1e-14);
  CHECK_THROWS_AS(z_of_m_spiked(-1.0 / 3.0, model), DomainError);
  const cplx m(-0.7, 0.3);
  CHECK(std::abs(z_of_m_spiked(std::conj(m), model) - std::conj(z_of_m_spiked(m, model))) < 1e-15);
  const auto null = SpikedModel::create(200, 400);
  CHECK(z_of_m_spiked(m, null) == z_of_m(m, 0.5));
}

TEST_CASE("null companion solver", "[stieltjes]") {
  const cplx edge = solve_companion(4.0, 1.0);
  CHECK(std::abs(edge + 0.5) < 1e-7);
  const cplx big(1e6, 1.0);
  CHECK(std::abs(solve_companion(big, 0.5) + 1.0 / big) < 1e-9);
  CHECK(solve_companion(cplx(1.0, 1e-8), 0.5).imag() > 0.0);
  CHECK_THROWS_AS(solve_companion(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(solve_companion(0.0, 0.5), DomainError);
  // y > 1: m(0) = 1/(y - 1) from the atom
  CHECK(std::abs(solve_companion(0.0, 2.0) - 1.0) < 1e-15);
  // real z right of the bulk: m real in (-1/(1+sqrt y), 0)
  const cplx right = solve_companion(5.0, 0.5);
  CHECK(right.imag() == 0.0);
  CHECK(right.real() < 0.0);
  CHECK(right.real() > -1.0 / (1.0 + std::sqrt(0.5)));
  // left of the bulk for y < 1: m below -1/(1-sqrt y)
  const cplx left = solve_companion(0.01, 0.5);
  CHECK(left.real() < -1.0 / (1.0 - std::sqrt(0.5)));
}

TEST_CASE("spiked companion solver", "[stieltjes]") {
  const auto model = SpikedModel::create(200, 400, {{3.0, 1}});
  const cplx m = solve_companion_spiked(10.0, model);
  CHECK(m.imag() == 0.0);
  CHECK(m.real() > -1.0 / 3.0);
  CHECK(m.real() < 0.0);
  CHECK(std::abs(z_of_m_spiked(m, model) - 10.0) < 1e-12);
  CHECK_THROWS_AS(solve_companion_spiked(1.0, model), DomainError);

  const auto null = SpikedModel::create(200, 400);
  const cplx z(1.3, 0.2);
  CHECK(solve_companion_spiked(z, null) == solve_companion(z, 0.5));
}

TEST_CASE("mp_integral of simple functions", "[stieltjes]") {
  for (double y : {0.1, 0.5, 1.0, 2.0, 3.5}) {
    CHECK_THAT(mp_integral(functions::identity(), y), WithinAbs(1.0, 1e-12));
  }
  CHECK_THAT(mp_integral(functions::square(), 0.5), WithinAbs(1.5, 1e-12));
  // closed form G(log x) = (1 - 1/y) log(1 - y) - 1
  CHECK_THAT(mp_integral(functions::log(), 0.5), WithinAbs(-0.30685281944005469, 1e-10));
  CHECK_THROWS_AS(mp_integral(functions::log(), 1.0), DomainError);
  CHECK_THROWS_AS(mp_integral(functions::log(), 2.0), DomainError);
}

TEST_CASE("mp_integral matches Narayana moments", "[stieltjes]") {
  for (double y : {0.2, 0.5, 0.9, 1.0, 1.5, 2.0, 4.0}) {
    for (int k = 0; k <= 6; ++k) {
      std::vector<double> c(k + 1, 0.0);
      c[k] = 1.0;
      const double expected = oracle::mp_moment(k, y);
      INFO("y=" << y << " k=" << k);
      CHECK_THAT(mp_integral(functions::polynomial(c), y), WithinRel(expected, 1e-11));
    }
  }
}

TEST_CASE("density normalization by independent quadrature", "[stieltjes]") {
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (double y : {0.3, 0.5, 1.0, 2.0}) {
    const auto [a, b] = mp_support(y);
    const double mass = integrator.integrate([&](double x) { return mp_density(x, y); }, a, b);
    CHECK_THAT(mass, WithinAbs(std::min(1.0, 1.0 / y), 1e-8));
  }
}

TEST_CASE("Herglotz property and roundtrip", "[stieltjes][property]") {
  oracle::Rng rng(11);
  for (double y : {0.1, 0.5, 1.0, 2.0}) {
    for (int i = 0; i < 500; ++i) {
      const cplx z(rng.uniform(-3.0, 10.0), std::pow(10.0, rng.uniform(-6.0, 1.5)));
      const cplx m = solve_companion(z, y);
      REQUIRE(m.imag() > 0.0);
      REQUIRE(std::abs(z_of_m(m, y) - z) < 1e-11 * std::max(1.0, std::abs(z)));
      const cplx mc = solve_companion(std::conj(z), y);
      REQUIRE(mc.imag() < 0.0);
      REQUIRE(std::abs(mc - std::conj(m)) < 1e-12 * std::max(1.0, std::abs(m)));
    }
  }
}

TEST_CASE("spiked Herglotz property and roundtrip", "[stieltjes][property]") {
  oracle::Rng rng(12);
  for (double y : {0.2, 0.5, 0.8, 1.0, 2.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      const int p = 100;
      const auto model = oracle::random_model(rng, p, static_cast<int>(p / y), 4, 0.1, 8.0);
      for (int i = 0; i < 100; ++i) {
        const cplx z(rng.uniform(-3.0, 15.0), std::pow(10.0, rng.uniform(-4.0, 1.5)));
        const cplx m = solve_companion_spiked(z, model);
        REQUIRE(m.imag() > 0.0);
        REQUIRE(std::abs(z_of_m_spiked(m, model) - z) < 1e-11 * std::max(1.0, std::abs(z)));
      }
    }
  }
}

TEST_CASE("spiked solver reduces to the null solver", "[stieltjes][property]") {
  oracle::Rng rng(13);
  for (double y : {0.1, 0.5, 1.0, 2.0}) {
    const auto null = SpikedModel::create(100, static_cast<int>(100 / y));
    for (int i = 0; i < 200; ++i) {
      const cplx z(rng.uniform(-3.0, 10.0), rng.uniform(-2.0, 2.0));
      if (z.imag() == 0.0) continue;
      REQUIRE(solve_companion_spiked(z, null) == solve_companion(z, y));
      const cplx m(rng.uniform(-3.0, 3.0), rng.uniform(0.01, 2.0));
      REQUIRE(std::abs(z_of_m_spiked(m, null) - z_of_m(m, y)) <= 1e-15 * std::abs(z_of_m(m, y)));
    }
  }
}

TEST_CASE("edge mapping z(-1/(1 +- sqrt y)) = (1 +- sqrt y)^2", "[stieltjes][property]") {
  for (double y : {0.01, 0.1, 0.25, 0.5, 0.9, 1.5, 2.0, 3.0, 10.0}) {
    const double r = std::sqrt(y);
    REQUIRE(std::abs(z_of_m(-1.0 / (1.0 + r), y) - (1.0 + r) * (1.0 + r)) < 1e-12);
    if (y != 1.0) REQUIRE(std::abs(z_of_m(-1.0 / (1.0 - r), y) - (1.0 - r) * (1.0 - r)) < 1e-12);
  }
}

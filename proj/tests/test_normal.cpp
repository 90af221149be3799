#include <catch_amalgamated.hpp>

#include <cmath>

#include "spectral_clt/errors.hpp"
#include "spectral_clt/normal.hpp"
#include "support/oracles.hpp"

using namespace spectral_clt;
using Catch::Matchers::WithinAbs;

TEST_CASE("reference values", "[normal]") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK_THAT(normal_cdf(1.0), WithinAbs(oracle::kCdf1, 1e-15));
  CHECK_THAT(normal_cdf(-3.0), WithinAbs(oracle::kCdfMinus3, 1e-17));
  CHECK_THAT(normal_sf(3.0), WithinAbs(oracle::kCdfMinus3, 1e-17));
  CHECK_THAT(normal_quantile(0.95), WithinAbs(oracle::kQuantile95, 1e-14));
  CHECK_THAT(normal_quantile(0.975), WithinAbs(oracle::kQuantile975, 1e-14));
  CHECK_THAT(normal_quantile(0.001), WithinAbs(oracle::kQuantile001, 1e-13));
  CHECK(normal_quantile(0.5) == 0.0);
}

TEST_CASE("quantile rejects the closed endpoints", "[normal]") {
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(-0.1), DomainError);
  CHECK_THROWS_AS(normal_quantile(NAN), DomainError);
}

TEST_CASE("cdf and quantile are inverse", "[normal][property]") {
  for (int i = 1; i <= 999; ++i) {
    const double q = i / 1000.0;
    REQUIRE(std::abs(normal_cdf(normal_quantile(q)) - q) < 1e-12);
  }
  for (int i = -80; i <= 80; ++i) {
    const double x = i / 10.0;
    REQUIRE(std::abs(normal_cdf(x) + normal_sf(x) - 1.0) < 1e-15);
    REQUIRE(normal_cdf(x) == normal_sf(-x));
  }
}

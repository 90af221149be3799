#include <catch_amalgamated.hpp>

#include <cmath>

#include "spectral_clt/philox.hpp"

using namespace spectral_clt;

// Known-answer vectors published with the Random123 distribution.
TEST_CASE("Philox4x32-10 known answers", "[philox]") {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct", "[philox]") {
  PhiloxStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u32();
    REQUIRE(x == b.next_u32());
    differs_c = differs_c || x != c.next_u32();
    differs_d = differs_d || x != d.next_u32();
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("uniform draws stay inside the open interval", "[philox]") {
  PhiloxStream s(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.next_uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("normal and Rademacher moments", "[philox][property]") {
  PhiloxStream s(2024, 0);
  const int n = 400000;
  double m1 = 0, m2 = 0, m4 = 0, r1 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.next_normal();
    m1 += z;
    m2 += z * z;
    m4 += z * z * z * z;
    const double r = s.next_rademacher();
    REQUIRE(std::abs(r) == 1.0);
    r1 += r;
  }
  // 5 standard errors
  CHECK(std::abs(m1 / n) < 5.0 / std::sqrt(n));
  CHECK(std::abs(m2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(m4 / n - 3.0) < 5.0 * std::sqrt(96.0 / n));
  CHECK(std::abs(r1 / n) < 5.0 / std::sqrt(n));
}

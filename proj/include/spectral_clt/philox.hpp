#pragma once

#include <array>
#include <cstdint>

namespace spectral_clt {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Sequential draws from the counter-based stream keyed by (seed, stream).
/// Distinct streams never share counters, so replicate `r` of a Monte Carlo
/// run is a pure function of (seed, r).
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint32_t next_u32() noexcept;
  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double next_uniform() noexcept;
  /// Standard normal by Box-Muller.
  double next_normal() noexcept;
  /// +1 or -1 with equal probability.
  double next_rademacher() noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace spectral_clt

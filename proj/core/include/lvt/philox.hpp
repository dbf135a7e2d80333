#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace lvt {

/// Philox4x32-10 counter-based generator (Salmon et al. 2011).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter apply(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      ctr = single_round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static constexpr Counter single_round(const Counter& c, const Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Uniform in [0, 1) with 53 random bits.
inline double uniform53(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(a >> 5) << 26) | (b >> 6);
  return static_cast<double>(bits) * 0x1.0p-53;
}

/// Four independent standard normals for one (seed, stream, step) triple. The same arguments
/// always give the same draws, whatever the calling thread or order.
inline std::array<double, 4> normals4(std::uint64_t seed, std::uint64_t stream, std::uint64_t step) {
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const auto s_lo = static_cast<std::uint32_t>(stream), s_hi = static_cast<std::uint32_t>(stream >> 32);
  // The step index uses the first word; the top bit of the second word selects the block.
  const auto st_lo = static_cast<std::uint32_t>(step);
  const auto st_hi = static_cast<std::uint32_t>(step >> 32) & 0x7FFFFFFFu;
  const auto b0 = Philox4x32::apply({st_lo, st_hi, s_lo, s_hi}, key);
  const auto b1 = Philox4x32::apply({st_lo, st_hi | 0x80000000u, s_lo, s_hi}, key);
  const double u[4] = {uniform53(b0[0], b0[1]), uniform53(b0[2], b0[3]), uniform53(b1[0], b1[1]),
                       uniform53(b1[2], b1[3])};
  std::array<double, 4> z{};
  for (int k = 0; k < 2; ++k) {
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u[2 * k]));
    const double angle = 2.0 * std::numbers::pi * u[2 * k + 1];
    z[2 * k] = radius * std::cos(angle);
    z[2 * k + 1] = radius * std::sin(angle);
  }
  return z;
}

}  // namespace lvt

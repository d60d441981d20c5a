#pragma once

#include <array>
#include <cstdint>

namespace bellcp {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Stateless: each (counter, key) maps to one 128-bit block, so any trial's
/// random numbers can be computed independently of every other trial.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

  /// Two uniforms in [0, 1) with 53 random bits each, for stream `key_seed`
  /// at position `index`.
  static std::array<double, 2> uniforms(std::uint64_t key_seed, std::uint64_t index) {
    const Counter out = block({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0, 0},
                              {static_cast<std::uint32_t>(key_seed), static_cast<std::uint32_t>(key_seed >> 32)});
    const std::uint64_t w0 = (std::uint64_t{out[0]} << 32) | out[1];
    const std::uint64_t w1 = (std::uint64_t{out[2]} << 32) | out[3];
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    return {static_cast<double>(w0 >> 11) * kScale, static_cast<double>(w1 >> 11) * kScale};
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
};

}  // namespace bellcp

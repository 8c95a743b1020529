#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace macropeaks {

// Philox-4x32-10 counter block cipher (Salmon et al. constants).
// Purely functional: output depends only on (key, counter), so draws are
// reproducible regardless of evaluation order or thread count.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

// Counter RNG with substreams keyed by (seed, stream). Streams are used for
// replicate indices and point blocks; indices address individual variates.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Uniform on (0, 1), 53-bit resolution, index-addressed.
  double uniform(std::uint64_t index) const {
    const auto w = block(index >> 1);
    const std::uint64_t bits = (index & 1)
                                   ? (static_cast<std::uint64_t>(w[2]) << 32) | w[3]
                                   : (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller on the uniform pair of one cipher block.
  double normal(std::uint64_t index) const {
    const auto w = block(index >> 1);
    const std::uint64_t b1 = (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
    const std::uint64_t b2 = (static_cast<std::uint64_t>(w[2]) << 32) | w[3];
    const double u1 = (static_cast<double>(b1 >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = (static_cast<double>(b2 >> 11) + 0.5) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    return (index & 1) ? radius * std::sin(angle) : radius * std::cos(angle);
  }

  // Stateful convenience cursor over the same indexed sequence.
  double next_normal() { return normal(cursor_++); }
  double next_uniform() { return uniform(cursor_++); }
  void reset_cursor(std::uint64_t index = 0) { cursor_ = index; }

 private:
  std::array<std::uint32_t, 4> block(std::uint64_t block_index) const {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32),
        static_cast<std::uint32_t>(block_index),
        static_cast<std::uint32_t>(block_index >> 32)};
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                              static_cast<std::uint32_t>(seed_ >> 32)};
    return philox4x32(ctr, key);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t cursor_ = 0;
};

}  // namespace macropeaks

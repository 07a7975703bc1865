#pragma once

#include <cstdint>

namespace splitpool {

// SplitMix64. Every random choice in this project flows through this
// generator, so a (seed, stream tag) pair pins the full design bit-for-bit on
// any platform. The constants are the reference ones from Steele et al.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, 2^bits) by masking low bits. Exact for power-of-two
  // ranges, which is the only kind the test designs use.
  std::uint64_t next_bits(unsigned bits) {
    std::uint64_t v = next();
    return bits >= 64 ? v : (v & ((std::uint64_t{1} << bits) - 1));
  }

  // Uniform draw from [0, bound) for arbitrary bound >= 1, by masked
  // rejection. No modulo bias.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    unsigned bits = 64 - static_cast<unsigned>(__builtin_clzll(bound - 1));
    for (;;) {
      std::uint64_t v = next_bits(bits);
      if (v < bound) return v;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Stateless SplitMix64 output mix, used to fold stream tags into seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Substream derivation. Folds up to three words into the master seed, one
// mix64 round per word:
//
//   s0 = mix64((seed + 1*GAMMA) ^ a)
//   s1 = mix64((s0   + 2*GAMMA) ^ b)
//   s2 = mix64((s1   + 3*GAMMA) ^ c)
//
// The result seeds an independent SplitMix64 stream. Tags below keep the
// substream families disjoint.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a,
                                    std::uint64_t b = 0, std::uint64_t c = 0) {
  constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  std::uint64_t s = mix64((seed + kGamma) ^ a);
  s = mix64((s + 2 * kGamma) ^ b);
  s = mix64((s + 3 * kGamma) ^ c);
  return s;
}

// Stream family tags (arbitrary distinct constants, fixed forever).
namespace stream_tag {
inline constexpr std::uint64_t kLevelSlots = 0x4c56534c54ull;  // explicit per-(level, rep) slots
inline constexpr std::uint64_t kFinalSlots = 0x46494e534cull;  // explicit final-sequence slots
inline constexpr std::uint64_t kLevelHash = 0x4c56485348ull;   // hashed per-(level, rep) coefficients
inline constexpr std::uint64_t kFinalHash = 0x464e485348ull;   // hashed final-sequence coefficients
inline constexpr std::uint64_t kSaffron = 0x534146524eull;     // SAFFRON bundle membership
inline constexpr std::uint64_t kTrial = 0x545249414cull;       // per-trial seeds in the harness
inline constexpr std::uint64_t kDefectives = 0x4445464354ull;  // defective-set sampling
inline constexpr std::uint64_t kSweepCell = 0x43454c4cull;     // per-cell seeds in sweeps
}  // namespace stream_tag

}  // namespace splitpool

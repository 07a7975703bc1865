#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "splitpool/prng.hpp"

namespace splitpool {

// Singleton-decoding baseline design. B bundles of 2*log2(n) tests each; an
// item joins a bundle with probability exactly 1/k (a k-ary fair draw hits
// 0). An included item ORs its bit pattern into the first half of the bundle
// and the complement pattern into the second half, so a bundle holding
// exactly one defective reads back that item's bits directly.
//
// Membership is a pure function of (seed, bundle, item); the design object
// stores only parameters.
struct SaffronDesign {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint32_t cb = 0;
  std::uint64_t bundles = 0;   // B = cb * k * max(1, log2 k)
  std::uint32_t item_bits = 0; // log2 n
  std::uint64_t seed = 0;

  std::uint64_t num_tests() const { return 2 * bundles * item_bits; }

  bool includes(std::uint64_t bundle, std::uint64_t item) const {
    // Low log2(k) bits of the membership word: == 0 with probability 1/k.
    const std::uint64_t w =
        mix64(substream_seed(seed, stream_tag::kSaffron, bundle, item));
    return (w & (k - 1)) == 0;
  }
};

// Rejects n or k not powers of two, n < 2, k < 1, k > n, cb < 1.
SaffronDesign make_saffron(std::uint64_t n, std::uint64_t k, std::uint32_t cb,
                           std::uint64_t seed);

// Per bundle, two item_bits-wide outcome words: word 0 collects the OR of
// defective bit patterns, word 1 the OR of their complements.
struct SaffronOutcomes {
  std::vector<std::array<std::uint64_t, 2>> bundle_words;
  friend bool operator==(const SaffronOutcomes&, const SaffronOutcomes&) = default;
};

// The two outcome words of a single bundle containing exactly `members`.
std::array<std::uint64_t, 2> saffron_encode(
    std::span<const std::uint64_t> members, std::uint32_t item_bits);

// Simulates outcomes; only defective membership is ever materialized.
SaffronOutcomes saffron_simulate(const SaffronDesign& d,
                                 std::span<const std::uint64_t> defectives);

// Reads each bundle's word pair; if word0 == ~word1 (within item_bits), the
// bundle held exactly one defective, namely item word0. Returns the sorted
// union. Never produces false positives.
std::vector<std::uint64_t> saffron_decode(const SaffronDesign& d,
                                          const SaffronOutcomes& y);

// Ground truth for the exact-recovery condition: every defective alone in at
// least one bundle.
bool saffron_all_isolated(const SaffronDesign& d,
                          std::span<const std::uint64_t> defectives);

}  // namespace splitpool

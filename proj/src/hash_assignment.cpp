#include "splitpool/hash_assignment.hpp"

#include <stdexcept>

#include "splitpool/prng.hpp"

namespace splitpool {

std::uint32_t default_independence(std::uint64_t k) {
  std::uint32_t ceil_log = 0;
  while ((std::uint64_t{1} << ceil_log) < k) ++ceil_log;
  return ceil_log + 3;
}

HashAssignment::HashAssignment(const ProblemParams& p, std::uint32_t r)
    : TestAssignment(p), r_(r) {
  if (r < 2) throw std::invalid_argument("independence parameter r must be >= 2");

  const std::uint32_t slot_bits = log2_exact(p.level_block_len());
  const std::uint32_t final_bits = log2_exact(p.final_block_len());

  level_hashes_.reserve(layout_.level_blocks());
  const std::uint32_t level_m = slot_bits;  // >= log2(C*k) >= 2
  for (std::uint32_t level = p.ell_min; level < p.ell_max; ++level) {
    const Gf2mField field(level > level_m ? level : level_m);
    for (std::uint32_t rep = 0; rep < p.Ctil; ++rep) {
      SplitMix64 stream(
          substream_seed(p.seed, stream_tag::kLevelHash, level, rep));
      level_hashes_.push_back(PolyHash::draw(field, r, slot_bits, stream));
    }
  }

  final_hashes_.reserve(p.final_sequences);
  const Gf2mField final_field(p.ell_max > final_bits ? p.ell_max : final_bits);
  for (std::uint32_t seq = 0; seq < p.final_sequences; ++seq) {
    SplitMix64 stream(substream_seed(p.seed, stream_tag::kFinalHash, seq));
    final_hashes_.push_back(PolyHash::draw(final_field, r, final_bits, stream));
  }
}

std::uint64_t HashAssignment::storage_bytes() const {
  return (storage_bits() + 7) / 8;
}

std::uint64_t HashAssignment::storage_bits() const {
  std::uint64_t bits = 0;
  for (const auto& h : level_hashes_) bits += h.storage_bits();
  for (const auto& h : final_hashes_) bits += h.storage_bits();
  return bits;
}

}  // namespace splitpool

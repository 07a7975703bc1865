#include "splitpool/assignment.hpp"

#include <stdexcept>

#include "splitpool/prng.hpp"

namespace splitpool {

ExplicitAssignment::ExplicitAssignment(const ProblemParams& p)
    : TestAssignment(p) {
  const std::uint32_t slot_bits = log2_exact(p.level_block_len());
  const std::uint32_t final_bits = log2_exact(p.final_block_len());

  level_slots_.resize(layout_.level_blocks());
  for (std::uint32_t level = p.ell_min; level < p.ell_max; ++level) {
    const std::uint64_t nodes = std::uint64_t{1} << level;
    for (std::uint32_t rep = 0; rep < p.Ctil; ++rep) {
      SplitMix64 stream(
          substream_seed(p.seed, stream_tag::kLevelSlots, level, rep));
      auto& slots = level_slots_[layout_.level_block(level, rep)];
      slots.resize(nodes);
      for (std::uint64_t j = 0; j < nodes; ++j)
        slots[j] = static_cast<std::uint32_t>(stream.next_bits(slot_bits));
    }
  }

  final_slots_.resize(p.final_sequences);
  for (std::uint32_t seq = 0; seq < p.final_sequences; ++seq) {
    SplitMix64 stream(substream_seed(p.seed, stream_tag::kFinalSlots, seq));
    auto& slots = final_slots_[seq];
    slots.resize(p.n);
    for (std::uint64_t i = 0; i < p.n; ++i)
      slots[i] = static_cast<std::uint32_t>(stream.next_bits(final_bits));
  }
}

std::uint64_t ExplicitAssignment::storage_bytes() const {
  std::uint64_t bytes = 0;
  for (const auto& v : level_slots_) bytes += v.size() * sizeof(std::uint32_t);
  for (const auto& v : final_slots_) bytes += v.size() * sizeof(std::uint32_t);
  return bytes;
}

}  // namespace splitpool

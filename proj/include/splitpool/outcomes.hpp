#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "splitpool/assignment.hpp"
#include "splitpool/params.hpp"

namespace splitpool {

// Packed test outcomes: bit = 1 iff the test contains at least one defective.
// Bits live in 64-bit words laid out per the design's TestLayout, one
// word-aligned run per (level, repetition) block and per final sequence;
// padding bits between a block's last test and its word boundary stay zero.
class Outcomes {
 public:
  explicit Outcomes(const TestLayout& layout)
      : layout_(layout), words_(layout.total_words(), 0) {}

  const TestLayout& layout() const { return layout_; }

  bool level_bit(std::uint32_t level, std::uint32_t rep,
                 std::uint64_t slot) const {
    return bit(layout_.level_word_offset(level, rep), slot);
  }
  bool final_bit(std::uint32_t seq, std::uint64_t slot) const {
    return bit(layout_.final_word_offset(seq), slot);
  }
  void set_level_bit(std::uint32_t level, std::uint32_t rep,
                     std::uint64_t slot) {
    set(layout_.level_word_offset(level, rep), slot);
  }
  void set_final_bit(std::uint32_t seq, std::uint64_t slot) {
    set(layout_.final_word_offset(seq), slot);
  }

  // Number of positive tests.
  std::uint64_t positive_count() const;

  std::span<const std::uint64_t> words() const { return words_; }

  // Storage words as fixed-width lowercase hex, word 0 first (so the most
  // significant word of the bit vector comes last).
  std::string to_hex() const;

  friend bool operator==(const Outcomes&, const Outcomes&) = default;

 private:
  bool bit(std::uint64_t word_base, std::uint64_t slot) const {
    return (words_[word_base + (slot >> 6)] >> (slot & 63)) & 1;
  }
  void set(std::uint64_t word_base, std::uint64_t slot) {
    words_[word_base + (slot >> 6)] |= std::uint64_t{1} << (slot & 63);
  }

  TestLayout layout_;
  std::vector<std::uint64_t> words_;
};

// Rejects unsorted input, duplicates, items outside [0, n), |S| > k.
void validate_defective_set(std::span<const std::uint64_t> defectives,
                            const ProblemParams& p);

// OR-outcome simulation, fast path: walks each defective's ancestry and marks
// that node's test per (level, repetition), plus the defective's final-level
// slots. O(|S| * (Ctil * log(n/k) + F)) bit writes.
Outcomes simulate_fast(const TestAssignment& a,
                       std::span<const std::uint64_t> defectives);

// Oracle path: iterates every node of every level (and every item at the
// final level) and marks its test iff its group intersects the defective
// set. Desk-scale only.
Outcomes simulate_naive(const TestAssignment& a,
                        std::span<const std::uint64_t> defectives);

}  // namespace splitpool

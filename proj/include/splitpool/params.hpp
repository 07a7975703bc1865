#pragma once

#include <cstdint>
#include <string>

namespace splitpool {

bool is_pow2(std::uint64_t v);
std::uint64_t next_pow2(std::uint64_t v);
// Exact base-2 log of a power of two.
std::uint32_t log2_exact(std::uint64_t v);

// Validated instance parameters plus the derived splitting-tree structure.
//
// Items form the leaves of a perfect binary tree over [0, n). Level l has 2^l
// nodes; node j at level l owns the contiguous block
// [j * n/2^l, (j+1) * n/2^l). Decoding starts at level ell_min = log2(k)
// (the first level with at least k nodes) and ends at the leaves,
// ell_max = log2(n).
//
// Tests come in two kinds:
//   - per level l in [ell_min, ell_max): Ctil repetitions of a bank of C*k
//     tests; every node at level l lands in one uniformly chosen test of each
//     repetition's bank;
//   - at the leaf level: final_sequences independent sequences of 2k tests;
//     every item lands in one uniformly chosen test of each sequence.
struct ProblemParams {
  // Effective (power-of-two) instance sizes.
  std::uint64_t n = 0;  // number of items
  std::uint64_t k = 0;  // defective-count bound
  // As requested, before rounding and clamping.
  std::uint64_t requested_n = 0;
  std::uint64_t requested_k = 0;

  std::uint32_t C = 16;      // tests-per-defective factor at split levels (power of two)
  std::uint32_t Cprime = 3;  // final-sequence count factor
  std::uint32_t Ctil = 1;    // repetitions per split level
  std::uint64_t seed = 0;    // master seed; every random choice derives from it

  // Derived.
  std::uint32_t ell_min = 0;          // log2(k)
  std::uint32_t ell_max = 0;          // log2(n)
  std::uint32_t final_sequences = 0;  // Cprime * max(1, log2(k))

  // Number of split levels carrying test banks (ell_min .. ell_max-1).
  std::uint32_t split_levels() const { return ell_max - ell_min; }
  std::uint64_t level_block_len() const { return std::uint64_t{C} * k; }
  std::uint64_t final_block_len() const { return 2 * k; }

  // The branching-process guarantees assume C >= 16; smaller powers of two
  // still produce a valid design, just without the analytical error bounds.
  bool below_recommended_C() const { return C < 16; }

  friend bool operator==(const ProblemParams&, const ProblemParams&) = default;
};

// Validates and derives. Rejects n < 2, k < 1, C not a power of two or < 4,
// Cprime < 1, Ctil < 1, and instances too large for the 32-bit slot encoding.
// k is rounded up to a power of two, then n (conceptually padding with dummy
// known-good items), then k is clamped to n/2 so at least one split level
// exists.
ProblemParams make_params(std::uint64_t n, std::uint64_t k, std::uint32_t C,
                          std::uint32_t Cprime, std::uint32_t Ctil,
                          std::uint64_t seed);

// Total number of tests:
//   Ctil * C * k * log2(n/k) + 2k * final_sequences.
std::uint64_t num_tests(const ProblemParams& p);

// A node of the splitting tree: `index` in [0, 2^level).
struct TreeNode {
  std::uint32_t level = 0;
  std::uint64_t index = 0;
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

// Half-open item interval [begin, end).
struct ItemRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  friend bool operator==(const ItemRange&, const ItemRange&) = default;
};

// Items owned by a node. Accepts any level in [0, ell_max].
ItemRange group_of(const TreeNode& node, const ProblemParams& p);
// The level-`level` ancestor of an item (at ell_max, the item's own leaf).
TreeNode ancestor_node(std::uint64_t item, std::uint32_t level,
                       const ProblemParams& p);

// Where every test lives. Global test indices are a contiguous partition of
// [0, num_tests): first the split-level banks (levels ascending, repetitions
// ascending within a level), then the final sequences. Bit storage pads each
// bank and each final sequence up to a 64-bit word boundary so a block can be
// manipulated as whole words; padding bits are dead and stay zero.
struct TestLayout {
  std::uint32_t ell_min = 0;
  std::uint32_t ell_max = 0;
  std::uint32_t repetitions = 0;      // Ctil
  std::uint32_t final_sequences = 0;  // F
  std::uint64_t level_block_len = 0;  // C * k
  std::uint64_t final_block_len = 0;  // 2k

  static TestLayout from_params(const ProblemParams& p);

  std::uint64_t level_blocks() const {
    return std::uint64_t{ell_max - ell_min} * repetitions;
  }
  std::uint64_t num_tests() const {
    return level_blocks() * level_block_len +
           std::uint64_t{final_sequences} * final_block_len;
  }

  // Storage geometry (64-bit words per block).
  std::uint64_t level_block_words() const { return (level_block_len + 63) / 64; }
  std::uint64_t final_block_words() const { return (final_block_len + 63) / 64; }
  std::uint64_t total_words() const {
    return level_blocks() * level_block_words() +
           std::uint64_t{final_sequences} * final_block_words();
  }

  // Block ordinal of a (level, repetition) bank.
  std::uint64_t level_block(std::uint32_t level, std::uint32_t rep) const {
    return std::uint64_t{level - ell_min} * repetitions + rep;
  }

  // Global index of the first test of a block.
  std::uint64_t level_test_offset(std::uint32_t level, std::uint32_t rep) const {
    return level_block(level, rep) * level_block_len;
  }
  std::uint64_t final_test_offset(std::uint32_t seq) const {
    return level_blocks() * level_block_len +
           std::uint64_t{seq} * final_block_len;
  }

  // Word index of the first storage word of a block.
  std::uint64_t level_word_offset(std::uint32_t level, std::uint32_t rep) const {
    return level_block(level, rep) * level_block_words();
  }
  std::uint64_t final_word_offset(std::uint32_t seq) const {
    return level_blocks() * level_block_words() +
           std::uint64_t{seq} * final_block_words();
  }

  friend bool operator==(const TestLayout&, const TestLayout&) = default;
};

}  // namespace splitpool

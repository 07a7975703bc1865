#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "splitpool/assignment.hpp"
#include "splitpool/outcomes.hpp"

namespace splitpool {

// Output of one decode, with the instrumentation the experiments report.
//
// nodes_visited counts frontier pops past the starting level (children of
// surviving nodes, leaves included) — the decoder's actual work. Splitting
// that into defective vs non-defective requires ground truth and is done
// separately (reach_stats) in simulation.
struct DecodeResult {
  std::vector<std::uint64_t> estimate;      // sorted item set
  std::vector<std::uint64_t> pd_per_level;  // sizes, levels ell_min..ell_max
  std::uint64_t nodes_visited = 0;
  std::uint64_t n_leaf_pd = 0;  // PD leaves entering the final filter
  std::uint64_t decode_ns = 0;  // wall-clock of the decode proper
};

// Optional capture of the per-level PD node lists (ascending), for
// ground-truth analysis of a simulated trial.
struct DecodeTrace {
  std::vector<std::vector<std::uint64_t>> pd_nodes;  // [level - ell_min]
};

// Level-by-level possibly-defective filtering, then the final-sequence
// filter:
//   - all 2^ell_min nodes start possibly defective;
//   - a node survives a split level iff all Ctil of its tests are positive,
//     and each survivor contributes both children to the next level;
//   - a leaf makes the estimate iff none of its F final-sequence tests is
//     negative.
// PD lists are ascending arrays; children are appended in order, which keeps
// them ascending without sorting. Deterministic given inputs.
DecodeResult decode(const TestAssignment& a, const Outcomes& y,
                    DecodeTrace* trace = nullptr);

// Ground-truth split of a traced decode, given the true defective set.
struct ReachStats {
  // Non-defective PD nodes summed over all levels ell_min..ell_max. This is
  // the quantity whose mean the 6k*log2(n/k) bound is about.
  std::uint64_t nondefective_total = 0;
  // Non-defective PD leaves (the 6k bound).
  std::uint64_t nondefective_leaf = 0;
  std::vector<std::uint64_t> nondefective_per_level;  // ell_min..ell_max
  std::vector<std::uint64_t> defective_per_level;     // PD nodes containing a defective
};
ReachStats reach_stats(const DecodeTrace& trace,
                       std::span<const std::uint64_t> defectives,
                       const ProblemParams& p);

// Desk-scale oracle: every subset of [0, n) of size <= kmax whose simulated
// outcomes equal `y` exactly, in enumeration order (by size, then
// lexicographic). Guard-railed to n <= 32, kmax <= 4, kmax <= params k.
std::vector<std::vector<std::uint64_t>> exhaustive_consistent(
    const TestAssignment& a, const Outcomes& y, std::uint32_t kmax);

}  // namespace splitpool

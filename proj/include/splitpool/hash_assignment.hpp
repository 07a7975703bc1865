#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "splitpool/assignment.hpp"
#include "splitpool/gf2m.hpp"

namespace splitpool {

// Default independence parameter: ceil(log2 k) + 3.
std::uint32_t default_independence(std::uint64_t k);

// Low-storage design: one degree-(r-1) polynomial hash per (level,
// repetition) block and per final sequence, instead of materialized slot
// arrays. The field degree per split level is max(level, log2(C*k)) so that
// distinct nodes stay distinct field points while the output still covers
// [0, C*k) exactly; final sequences hash items over a degree-log2(n) field
// onto [0, 2k).
//
// Storage is r field elements per hash; lookups cost r-1 field
// multiplications. A relaxed atomic counts evaluations so benchmarks can
// report multiplication totals; it does not affect behaviour.
class HashAssignment final : public TestAssignment {
 public:
  HashAssignment(const ProblemParams& p, std::uint32_t r);

  HashAssignment(const HashAssignment&) = delete;
  HashAssignment& operator=(const HashAssignment&) = delete;

  std::uint64_t level_slot(std::uint32_t level, std::uint32_t rep,
                           std::uint64_t node) const override {
    evals_.fetch_add(1, std::memory_order_relaxed);
    return level_hashes_[layout_.level_block(level, rep)](node);
  }
  std::uint64_t final_slot(std::uint32_t seq, std::uint64_t item) const override {
    evals_.fetch_add(1, std::memory_order_relaxed);
    return final_hashes_[seq](item);
  }
  std::uint64_t storage_bytes() const override;
  // Exact storage of the hash state in bits (sum of r*m over all hashes).
  std::uint64_t storage_bits() const;

  std::uint32_t r() const { return r_; }

  std::uint64_t eval_count() const {
    return evals_.load(std::memory_order_relaxed);
  }
  void reset_eval_count() const { evals_.store(0, std::memory_order_relaxed); }
  // Field multiplications implied by the evaluations so far.
  std::uint64_t mul_count() const { return eval_count() * (r_ - 1); }

  const PolyHash& level_hash(std::uint32_t level, std::uint32_t rep) const {
    return level_hashes_[layout_.level_block(level, rep)];
  }
  const PolyHash& final_hash(std::uint32_t seq) const {
    return final_hashes_[seq];
  }

 private:
  std::uint32_t r_;
  std::vector<PolyHash> level_hashes_;  // [block]
  std::vector<PolyHash> final_hashes_;  // [sequence]
  mutable std::atomic<std::uint64_t> evals_{0};
};

}  // namespace splitpool

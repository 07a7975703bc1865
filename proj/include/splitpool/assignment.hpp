#pragma once

#include <cstdint>
#include <vector>

#include "splitpool/params.hpp"

namespace splitpool {

// Capability shared by the explicit and hashed designs: which test (within
// its block) a tree node or item lands in. Implementations are immutable
// after construction, so concurrent lookups are safe.
class TestAssignment {
 public:
  virtual ~TestAssignment() = default;

  // Slot in [0, C*k) of node `node` at `level` in [ell_min, ell_max), for
  // repetition `rep` in [0, Ctil).
  virtual std::uint64_t level_slot(std::uint32_t level, std::uint32_t rep,
                                   std::uint64_t node) const = 0;
  // Slot in [0, 2k) of `item` in final sequence `seq` in [0, F).
  virtual std::uint64_t final_slot(std::uint32_t seq,
                                   std::uint64_t item) const = 0;
  // Bytes of state backing the lookups (the quantity the storage claims are
  // about; excludes fixed-size bookkeeping).
  virtual std::uint64_t storage_bytes() const = 0;

  const ProblemParams& params() const { return params_; }
  const TestLayout& layout() const { return layout_; }

 protected:
  explicit TestAssignment(const ProblemParams& p)
      : params_(p), layout_(TestLayout::from_params(p)) {}

  ProblemParams params_;
  TestLayout layout_;
};

// Fully materialized design: one uniform slot per node per (level,
// repetition) block, one uniform slot per item per final sequence, all drawn
// from substreams of the master seed. Storage is one 32-bit integer per node
// plus F integers per item.
class ExplicitAssignment final : public TestAssignment {
 public:
  explicit ExplicitAssignment(const ProblemParams& p);

  std::uint64_t level_slot(std::uint32_t level, std::uint32_t rep,
                           std::uint64_t node) const override {
    return level_slots_[layout_.level_block(level, rep)][node];
  }
  std::uint64_t final_slot(std::uint32_t seq, std::uint64_t item) const override {
    return final_slots_[seq][item];
  }
  std::uint64_t storage_bytes() const override;

  // Raw block access for dumps and tests.
  const std::vector<std::uint32_t>& level_block_slots(std::uint32_t level,
                                                      std::uint32_t rep) const {
    return level_slots_[layout_.level_block(level, rep)];
  }
  const std::vector<std::uint32_t>& final_sequence_slots(std::uint32_t seq) const {
    return final_slots_[seq];
  }

 private:
  std::vector<std::vector<std::uint32_t>> level_slots_;  // [block][node]
  std::vector<std::vector<std::uint32_t>> final_slots_;  // [sequence][item]
};

}  // namespace splitpool

#include "splitpool/outcomes.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <stdexcept>

namespace splitpool {

std::uint64_t Outcomes::positive_count() const {
  std::uint64_t total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

std::string Outcomes::to_hex() const {
  std::string out;
  out.reserve(words_.size() * 16);
  char buf[17];
  for (std::uint64_t w : words_) {
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(w));
    out += buf;
  }
  return out;
}

void validate_defective_set(std::span<const std::uint64_t> defectives,
                            const ProblemParams& p) {
  if (defectives.size() > p.k)
    throw std::invalid_argument("defective set larger than k");
  for (std::size_t i = 0; i < defectives.size(); ++i) {
    if (defectives[i] >= p.n)
      throw std::invalid_argument("defective item out of range");
    if (i > 0 && defectives[i] <= defectives[i - 1])
      throw std::invalid_argument(
          "defective set must be strictly ascending (sorted, no duplicates)");
  }
}

Outcomes simulate_fast(const TestAssignment& a,
                       std::span<const std::uint64_t> defectives) {
  const ProblemParams& p = a.params();
  validate_defective_set(defectives, p);
  Outcomes y(a.layout());
  for (std::uint64_t item : defectives) {
    for (std::uint32_t level = p.ell_min; level < p.ell_max; ++level) {
      const std::uint64_t node = item >> (p.ell_max - level);
      for (std::uint32_t rep = 0; rep < p.Ctil; ++rep)
        y.set_level_bit(level, rep, a.level_slot(level, rep, node));
    }
    for (std::uint32_t seq = 0; seq < p.final_sequences; ++seq)
      y.set_final_bit(seq, a.final_slot(seq, item));
  }
  return y;
}

Outcomes simulate_naive(const TestAssignment& a,
                        std::span<const std::uint64_t> defectives) {
  const ProblemParams& p = a.params();
  validate_defective_set(defectives, p);
  Outcomes y(a.layout());
  for (std::uint32_t level = p.ell_min; level < p.ell_max; ++level) {
    const std::uint64_t nodes = std::uint64_t{1} << level;
    for (std::uint64_t node = 0; node < nodes; ++node) {
      const ItemRange g = group_of(TreeNode{level, node}, p);
      const bool positive = std::lower_bound(defectives.begin(),
                                             defectives.end(),
                                             g.begin) !=
                            std::lower_bound(defectives.begin(),
                                             defectives.end(), g.end);
      if (!positive) continue;
      for (std::uint32_t rep = 0; rep < p.Ctil; ++rep)
        y.set_level_bit(level, rep, a.level_slot(level, rep, node));
    }
  }
  for (std::uint64_t item = 0; item < p.n; ++item) {
    const bool defective =
        std::binary_search(defectives.begin(), defectives.end(), item);
    if (!defective) continue;
    for (std::uint32_t seq = 0; seq < p.final_sequences; ++seq)
      y.set_final_bit(seq, a.final_slot(seq, item));
  }
  return y;
}

}  // namespace splitpool

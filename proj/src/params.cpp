#include "splitpool/params.hpp"

#include <bit>
#include <stdexcept>

namespace splitpool {

bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::uint64_t next_pow2(std::uint64_t v) {
  if (v <= 1) return 1;
  return std::uint64_t{1} << (64 - std::countl_zero(v - 1));
}

std::uint32_t log2_exact(std::uint64_t v) {
  if (!is_pow2(v)) throw std::invalid_argument("log2_exact: not a power of two");
  return static_cast<std::uint32_t>(std::countr_zero(v));
}

ProblemParams make_params(std::uint64_t n, std::uint64_t k, std::uint32_t C,
                          std::uint32_t Cprime, std::uint32_t Ctil,
                          std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (!is_pow2(C) || C < 4)
    throw std::invalid_argument("C must be a power of two and at least 4");
  if (Cprime < 1) throw std::invalid_argument("Cprime must be at least 1");
  if (Ctil < 1) throw std::invalid_argument("Ctil must be at least 1");

  ProblemParams p;
  p.requested_n = n;
  p.requested_k = k;
  p.k = next_pow2(k);
  p.n = next_pow2(n);
  if (p.k > p.n / 2) p.k = p.n / 2;
  p.C = C;
  p.Cprime = Cprime;
  p.Ctil = Ctil;
  p.seed = seed;

  p.ell_max = log2_exact(p.n);
  p.ell_min = log2_exact(p.k);
  std::uint32_t logk = p.ell_min;
  p.final_sequences = Cprime * (logk > 1 ? logk : 1);

  // Slots are stored and dumped as 32-bit integers; keep every bank small
  // enough for that, and item ids inside the 32-bit tree-index range.
  if (p.ell_max > 32) throw std::invalid_argument("n must be at most 2^32");
  if (C > (std::uint32_t{1} << 20))
    throw std::invalid_argument("C must be at most 2^20");
  if (p.level_block_len() > (std::uint64_t{1} << 32))
    throw std::invalid_argument("C * k must be at most 2^32");
  return p;
}

std::uint64_t num_tests(const ProblemParams& p) {
  return std::uint64_t{p.Ctil} * p.C * p.k * p.split_levels() +
         p.final_block_len() * p.final_sequences;
}

ItemRange group_of(const TreeNode& node, const ProblemParams& p) {
  if (node.level > p.ell_max)
    throw std::out_of_range("group_of: level beyond leaf level");
  if (node.index >= (std::uint64_t{1} << node.level))
    throw std::out_of_range("group_of: node index out of range");
  std::uint64_t width = p.n >> node.level;
  return ItemRange{node.index * width, (node.index + 1) * width};
}

TreeNode ancestor_node(std::uint64_t item, std::uint32_t level,
                       const ProblemParams& p) {
  if (item >= p.n) throw std::out_of_range("ancestor_node: item out of range");
  if (level > p.ell_max)
    throw std::out_of_range("ancestor_node: level beyond leaf level");
  return TreeNode{level, item >> (p.ell_max - level)};
}

TestLayout TestLayout::from_params(const ProblemParams& p) {
  TestLayout l;
  l.ell_min = p.ell_min;
  l.ell_max = p.ell_max;
  l.repetitions = p.Ctil;
  l.final_sequences = p.final_sequences;
  l.level_block_len = p.level_block_len();
  l.final_block_len = p.final_block_len();
  return l;
}

}  // namespace splitpool

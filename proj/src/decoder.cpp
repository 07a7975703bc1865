#include "splitpool/decoder.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace splitpool {

DecodeResult decode(const TestAssignment& a, const Outcomes& y,
                    DecodeTrace* trace) {
  if (y.layout() != a.layout())
    throw std::invalid_argument("outcomes were not produced under this design");
  const ProblemParams& p = a.params();

  const auto start = std::chrono::steady_clock::now();

  DecodeResult res;
  res.pd_per_level.reserve(p.split_levels() + 1);
  if (trace) trace->pd_nodes.assign(p.split_levels() + 1, {});

  // Every node of the starting level is possibly defective.
  std::vector<std::uint64_t> pd(p.k);
  for (std::uint64_t j = 0; j < p.k; ++j) pd[j] = j;
  std::vector<std::uint64_t> next;

  for (std::uint32_t level = p.ell_min; level < p.ell_max; ++level) {
    res.pd_per_level.push_back(pd.size());
    if (trace) trace->pd_nodes[level - p.ell_min] = pd;
    next.clear();
    for (std::uint64_t node : pd) {
      bool survives = true;
      for (std::uint32_t rep = 0; rep < p.Ctil && survives; ++rep)
        survives = y.level_bit(level, rep, a.level_slot(level, rep, node));
      if (survives) {
        next.push_back(2 * node);
        next.push_back(2 * node + 1);
      }
    }
    pd.swap(next);
    res.nodes_visited += pd.size();
  }

  res.pd_per_level.push_back(pd.size());
  if (trace) trace->pd_nodes[p.split_levels()] = pd;
  res.n_leaf_pd = pd.size();

  for (std::uint64_t item : pd) {
    bool keep = true;
    for (std::uint32_t seq = 0; seq < p.final_sequences && keep; ++seq)
      keep = y.final_bit(seq, a.final_slot(seq, item));
    if (keep) res.estimate.push_back(item);
  }

  res.decode_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
  return res;
}

ReachStats reach_stats(const DecodeTrace& trace,
                       std::span<const std::uint64_t> defectives,
                       const ProblemParams& p) {
  if (trace.pd_nodes.size() != p.split_levels() + 1)
    throw std::invalid_argument("trace does not match params");
  ReachStats st;
  st.nondefective_per_level.resize(trace.pd_nodes.size(), 0);
  st.defective_per_level.resize(trace.pd_nodes.size(), 0);

  std::vector<std::uint64_t> defective_nodes;
  for (std::uint32_t level = p.ell_min; level <= p.ell_max; ++level) {
    // Distinct ancestors of defectives at this level; defectives are sorted,
    // so shifted values are sorted too.
    defective_nodes.clear();
    for (std::uint64_t item : defectives) {
      const std::uint64_t node = item >> (p.ell_max - level);
      if (defective_nodes.empty() || defective_nodes.back() != node)
        defective_nodes.push_back(node);
    }
    const auto& pd = trace.pd_nodes[level - p.ell_min];
    std::uint64_t defective_in_pd = 0;
    for (std::uint64_t node : pd)
      if (std::binary_search(defective_nodes.begin(), defective_nodes.end(),
                             node))
        ++defective_in_pd;
    const std::uint64_t nondef = pd.size() - defective_in_pd;
    st.defective_per_level[level - p.ell_min] = defective_in_pd;
    st.nondefective_per_level[level - p.ell_min] = nondef;
    st.nondefective_total += nondef;
    if (level == p.ell_max) st.nondefective_leaf = nondef;
  }
  return st;
}

std::vector<std::vector<std::uint64_t>> exhaustive_consistent(
    const TestAssignment& a, const Outcomes& y, std::uint32_t kmax) {
  const ProblemParams& p = a.params();
  if (p.n > 32 || kmax > 4)
    throw std::invalid_argument(
        "exhaustive search limited to n <= 32, kmax <= 4");
  if (kmax > p.k)
    throw std::invalid_argument("kmax exceeds the design's defective bound");

  std::vector<std::vector<std::uint64_t>> consistent;
  std::vector<std::uint64_t> subset;
  // Enumerate subsets of each size in lexicographic order.
  auto recurse = [&](auto&& self, std::uint64_t first, std::uint32_t left) -> void {
    if (left == 0) {
      if (simulate_fast(a, subset) == y) consistent.push_back(subset);
      return;
    }
    for (std::uint64_t item = first; item + left <= p.n; ++item) {
      subset.push_back(item);
      self(self, item + 1, left - 1);
      subset.pop_back();
    }
  };
  for (std::uint32_t size = 0; size <= kmax; ++size)
    recurse(recurse, 0, size);
  return consistent;
}

}  // namespace splitpool

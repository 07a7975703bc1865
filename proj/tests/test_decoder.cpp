#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "splitpool/assignment.hpp"
#include "splitpool/decoder.hpp"
#include "splitpool/hash_assignment.hpp"
#include "splitpool/lemmas.hpp"
#include "splitpool/outcomes.hpp"
#include "splitpool/prng.hpp"

using namespace splitpool;

namespace {

bool is_subset(const std::vector<std::uint64_t>& sub,
               const std::vector<std::uint64_t>& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

std::uint64_t distinct_ancestors(const std::vector<std::uint64_t>& S,
                                 std::uint32_t shift) {
  std::uint64_t count = 0;
  std::uint64_t prev = ~std::uint64_t{0};
  for (std::uint64_t item : S) {
    const std::uint64_t node = item >> shift;
    if (count == 0 || node != prev) ++count;
    prev = node;
  }
  return count;
}

}  // namespace

TEST_CASE("all-negative outcomes decode to the empty set") {
  const ProblemParams p = make_params(256, 4, 16, 3, 1, 11);
  const ExplicitAssignment a(p);
  const Outcomes y{TestLayout::from_params(p)};
  const DecodeResult res = decode(a, y);
  CHECK(res.estimate.empty());
  CHECK(res.pd_per_level.front() == p.k);
  CHECK(res.pd_per_level[1] == 0);  // nothing survives the first level
  CHECK(res.n_leaf_pd == 0);
  CHECK(res.nodes_visited == 0);
}

TEST_CASE("decode rejects outcomes from a different layout") {
  const ProblemParams p1 = make_params(256, 4, 16, 3, 1, 1);
  const ProblemParams p2 = make_params(256, 8, 16, 3, 1, 1);
  const ExplicitAssignment a(p1);
  const Outcomes wrong{TestLayout::from_params(p2)};
  CHECK_THROWS_AS(decode(a, wrong), std::invalid_argument);
}

TEST_CASE("no false negatives over random explicit trials") {
  SplitMix64 g(90210);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t n = std::uint64_t{1} << (6 + g.next_below(5));
    const ProblemParams p = make_params(n, 8, 16, 3, 1, g.next());
    const ExplicitAssignment a(p);
    const auto S = sample_defectives(p.n, g.next_below(p.k + 1), g);
    const DecodeResult res = decode(a, simulate_fast(a, S));
    CHECK(is_subset(S, res.estimate));
    CHECK(std::is_sorted(res.estimate.begin(), res.estimate.end()));
  }
}

TEST_CASE("no false negatives over random hashed trials") {
  SplitMix64 g(1729);
  for (int trial = 0; trial < 40; ++trial) {
    const ProblemParams p = make_params(1 << 9, 8, 16, 3, 2, g.next());
    const HashAssignment a(p, default_independence(p.k));
    const auto S = sample_defectives(p.n, p.k, g);
    const DecodeResult res = decode(a, simulate_fast(a, S));
    CHECK(is_subset(S, res.estimate));
  }
}

TEST_CASE("every defective node stays possibly defective, level by level") {
  SplitMix64 g(555);
  for (int trial = 0; trial < 25; ++trial) {
    const ProblemParams p = make_params(1 << 8, 8, 16, 3, 1, g.next());
    const ExplicitAssignment a(p);
    const auto S = sample_defectives(p.n, p.k, g);
    DecodeTrace trace;
    decode(a, simulate_fast(a, S), &trace);
    const ReachStats st = reach_stats(trace, S, p);
    for (std::uint32_t level = p.ell_min; level <= p.ell_max; ++level) {
      // The PD list must contain every node owning a defective: the count of
      // defective PD nodes equals the count of distinct defective ancestors.
      CHECK(st.defective_per_level[level - p.ell_min] ==
            distinct_ancestors(S, p.ell_max - level));
    }
  }
}

TEST_CASE("instrumentation is internally consistent") {
  SplitMix64 g(8080);
  for (int trial = 0; trial < 25; ++trial) {
    const ProblemParams p = make_params(1 << 10, 16, 16, 3, 1, g.next());
    const ExplicitAssignment a(p);
    const auto S = sample_defectives(p.n, p.k, g);
    DecodeTrace trace;
    const DecodeResult res = decode(a, simulate_fast(a, S), &trace);
    const ReachStats st = reach_stats(trace, S, p);

    CHECK(res.pd_per_level.size() == p.split_levels() + 1);
    CHECK(res.pd_per_level.front() == p.k);
    CHECK(res.pd_per_level.back() == res.n_leaf_pd);

    // nodes_visited = total frontier pops past the starting level.
    std::uint64_t pops = 0;
    for (std::size_t i = 1; i < res.pd_per_level.size(); ++i)
      pops += res.pd_per_level[i];
    CHECK(res.nodes_visited == pops);

    // Work bound: every visited node is a child of a PD node, and PD nodes
    // are defective-path nodes or ground-truth-reached non-defectives.
    const std::uint64_t bound =
        2 * (p.k * p.split_levels() + st.nondefective_total) + p.k +
        res.n_leaf_pd;
    CHECK(res.nodes_visited <= bound);

    // Per-level split adds back up.
    for (std::size_t i = 0; i < res.pd_per_level.size(); ++i)
      CHECK(st.defective_per_level[i] + st.nondefective_per_level[i] ==
            res.pd_per_level[i]);
  }
}

TEST_CASE("pinned desk-scale instance decodes exactly") {
  const ProblemParams p = make_params(16, 2, 16, 3, 1, 42);
  const ExplicitAssignment a(p);
  const std::vector<std::uint64_t> S{3, 11};
  const Outcomes y = simulate_naive(a, S);
  const DecodeResult res = decode(a, y);
  CHECK(res.estimate == S);
  // Cross-checked against the brute-force consistency oracle.
  const auto consistent = exhaustive_consistent(a, y, 2);
  bool found = false;
  for (const auto& cand : consistent) found = found || cand == S;
  CHECK(found);
}

TEST_CASE("exhaustive consistency oracle") {
  const ProblemParams p = make_params(16, 2, 16, 3, 1, 3);
  const ExplicitAssignment a(p);

  // All-negative outcomes are consistent only with the empty set.
  const Outcomes empty = simulate_fast(a, std::vector<std::uint64_t>{});
  const auto only_empty = exhaustive_consistent(a, empty, 2);
  REQUIRE(only_empty.size() == 1);
  CHECK(only_empty[0].empty());

  // The true set always appears in the candidate list.
  SplitMix64 g(246);
  for (int trial = 0; trial < 100; ++trial) {
    const auto S = sample_defectives(16, g.next_below(3), g);
    const auto list = exhaustive_consistent(a, simulate_fast(a, S), 2);
    bool found = false;
    for (const auto& cand : list) found = found || cand == S;
    CHECK(found);
  }
}

TEST_CASE("consistency oracle guard rails") {
  const ProblemParams big = make_params(64, 4, 16, 3, 1, 0);
  const ExplicitAssignment a_big(big);
  const Outcomes y_big{TestLayout::from_params(big)};
  CHECK_THROWS_AS(exhaustive_consistent(a_big, y_big, 4),
                  std::invalid_argument);

  const ProblemParams small = make_params(32, 2, 16, 3, 1, 0);
  const ExplicitAssignment a_small(small);
  const Outcomes y_small{TestLayout::from_params(small)};
  CHECK_THROWS_AS(exhaustive_consistent(a_small, y_small, 3),
                  std::invalid_argument);  // kmax above the design's k
}

TEST_CASE("decode times are measured") {
  const ProblemParams p = make_params(1 << 12, 16, 16, 3, 1, 4);
  const ExplicitAssignment a(p);
  SplitMix64 g(4);
  const auto S = sample_defectives(p.n, p.k, g);
  const DecodeResult res = decode(a, simulate_fast(a, S));
  CHECK(res.decode_ns > 0);
}

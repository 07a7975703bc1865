#pragma once

#include <cstdint>
#include <vector>

#include "splitpool/params.hpp"
#include "splitpool/prng.hpp"

namespace splitpool {

// --- Binary branching process, total progeny -------------------------------
//
// Each node of an infinite binary tree is independently marked with
// probability q; a node is reached iff all its proper ancestors are marked
// (the root is always reached). For q < 1/2 the reached population N is
// almost surely finite with
//
//   P[N = n] = (1/n) * C(n, (n-1)/2) * (1-q)^((n+1)/2) * q^((n-1)/2)
//
// for odd n and 0 for even n. This is the subtree the split-level filter can
// keep alive below a single falsely-surviving node when each test is positive
// independently with probability q.

struct BranchPmf {
  double q = 0;
  // pmf[n] = P[N = n]; index 0 unused (N >= 1).
  std::vector<double> pmf;
  double tail_mass = 0;  // 1 - sum(pmf)
};

// Closed-form pmf for n = 1..n_max. Rejects q outside [0, 1/2) — at
// q >= 1/2 the population survives forever with positive probability.
// Binomials above n = 60 are computed in log space.
BranchPmf branching_pmf_exact(double q, std::uint32_t n_max);

struct BranchSimResult {
  std::vector<double> pmf;  // empirical P[N = n], n = 1..n_max
  double beyond_mass = 0;   // fraction of trials with N > n_max
  std::uint64_t trials = 0;
  std::uint64_t depth_cap_hits = 0;  // trials truncated at the generation cap
};

// Direct simulation of the marking process, counting reached nodes.
// Generations are capped (default semantics: a capped trial counts toward
// beyond_mass and depth_cap_hits).
BranchSimResult branching_simulate(double q, std::uint32_t depth_cap,
                                   std::uint64_t trials, std::uint64_t seed,
                                   std::uint32_t n_max);

// Total-variation distance on the bins {1..n_cut} plus one lumped ">n_cut"
// bin. `exact` supplies tail_mass for its lump; `sim` lumps beyond_mass plus
// any histogram mass above n_cut.
double branching_tv(const BranchPmf& exact, const BranchSimResult& sim,
                    std::uint32_t n_cut);

// --- Leaf count below a falsely-surviving node -----------------------------
//
// N_h = number of depth-h leaves whose root-to-leaf path is all marked, under
// the same independent marking. Exact distribution by the convolution
// recursion D_0 = Bernoulli(q), D_h = (1-q) * delta_0 + q * (D_{h-1} conv
// D_{h-1}).

struct LeafPmf {
  double q = 0;
  std::uint32_t h = 0;
  std::vector<double> pmf;  // P[N_h = t], t = 0..2^h
};

// Rejects q outside [0,1] and h > 20 (the DP holds 2^h + 1 doubles).
LeafPmf leaf_pmf_exact(double q, std::uint32_t h);

// P[N_h >= t] from the exact pmf.
double leaf_tail(const LeafPmf& d, std::uint64_t t);

// Largest violation of P[N_h >= t] <= 4^-(h+t) over h = 1..h_max, t = 1..2^h.
struct LeafTailReport {
  double q = 0;
  std::uint32_t h_max = 0;
  double worst_ratio = 0;  // max over (h,t) of P[N_h >= t] / 4^-(h+t)
  std::uint32_t worst_h = 0;
  std::uint64_t worst_t = 0;
  bool pass = false;  // worst_ratio <= 1
};
LeafTailReport leaf_tail_check(double q, std::uint32_t h_max);

// E[exp(lambda * N_h)] <= 1 + 4^-h per height, and the product over
// h = 1..h_max (the MGF of a sum of independent copies) <= 2.
struct LeafMgfReport {
  double q = 0;
  double lambda = 0;
  std::vector<double> mgf;    // index h-1, h = 1..h_max
  std::vector<double> bound;  // 1 + 4^-h
  double product = 0;
  bool pass = false;
};
LeafMgfReport leaf_mgf_check(double q, std::uint32_t h_max, double lambda);

// --- Monte-Carlo mean checks over the real decoder -------------------------

struct MeanBoundsReport {
  std::uint64_t trials = 0;
  double mean_leaf = 0;    // non-defective PD leaves
  double se_leaf = 0;
  double bound_leaf = 0;   // 6k
  double mean_total = 0;   // non-defective PD nodes, all levels
  double se_total = 0;
  double bound_total = 0;  // 6k log2(n/k)
  bool pass = false;       // both means below bound
};

// Full-independence trials with |S| = k drawn uniformly; measures the
// ground-truth non-defective reach counts.
MeanBoundsReport mean_bounds_mc(const ProblemParams& params,
                                std::uint64_t trials, std::uint64_t seed);

struct HashedPdLevel {
  std::uint32_t level = 0;
  std::uint64_t samples = 0;   // trials passing the <= 4k PD premise here
  std::uint64_t discarded = 0; // trials failing the premise here
  double mean = 0;             // non-defective PD nodes in positive tests
  double variance = 0;
};

struct HashedPdReport {
  std::uint64_t trials = 0;
  double bound = 0;  // k/2
  std::vector<HashedPdLevel> levels;  // split levels ell_min..ell_max-1
  bool pass = false;                  // every level mean <= bound
};

// Hashed-variant trials (requires Ctil = 1, C >= 8): per split level,
// conditioned on at most 4k PD nodes at that level, counts the non-defective
// PD nodes whose test is positive.
HashedPdReport hashed_pd_mean_mc(const ProblemParams& params, std::uint32_t r,
                                 std::uint64_t trials, std::uint64_t seed);

// Uniform size-`count` subset of [0, n), ascending, via lazy partial
// Fisher-Yates on the stream.
std::vector<std::uint64_t> sample_defectives(std::uint64_t n,
                                             std::uint64_t count,
                                             SplitMix64& stream);

}  // namespace splitpool

#include "splitpool/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "splitpool/assignment.hpp"
#include "splitpool/decoder.hpp"
#include "splitpool/hash_assignment.hpp"
#include "splitpool/outcomes.hpp"

namespace splitpool {

namespace {

// C(n, r) as a double; log-space above n = 60 where the direct product
// would overflow.
double binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0.0;
  if (n <= 60) {
    double v = 1.0;
    for (std::uint64_t i = 0; i < r; ++i)
      v = v * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return v;
  }
  return std::exp(std::lgamma(static_cast<double>(n) + 1) -
                  std::lgamma(static_cast<double>(r) + 1) -
                  std::lgamma(static_cast<double>(n - r) + 1));
}

}  // namespace

BranchPmf branching_pmf_exact(double q, std::uint32_t n_max) {
  if (!(q >= 0.0 && q < 0.5))
    throw std::invalid_argument(
        "marking probability must be in [0, 1/2) for a.s. finite progeny");
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");

  BranchPmf out;
  out.q = q;
  out.pmf.assign(n_max + 1, 0.0);
  double total = 0.0;
  for (std::uint64_t n = 1; n <= n_max; n += 2) {
    const std::uint64_t half = (n - 1) / 2;
    double p;
    if (n <= 60) {
      p = binomial(n, half) * std::pow(1.0 - q, static_cast<double>(half + 1)) *
          std::pow(q, static_cast<double>(half)) / static_cast<double>(n);
    } else if (q == 0.0) {
      p = 0.0;
    } else {
      // Fully log-space: the binomial alone overflows while the power terms
      // underflow; their product is a sane probability.
      const double logp = -std::log(static_cast<double>(n)) +
                          std::lgamma(static_cast<double>(n) + 1) -
                          std::lgamma(static_cast<double>(half) + 1) -
                          std::lgamma(static_cast<double>(half) + 2) +
                          static_cast<double>(half + 1) * std::log1p(-q) +
                          static_cast<double>(half) * std::log(q);
      p = std::exp(logp);
    }
    out.pmf[n] = p;
    total += p;
  }
  out.tail_mass = 1.0 - total;
  return out;
}

BranchSimResult branching_simulate(double q, std::uint32_t depth_cap,
                                   std::uint64_t trials, std::uint64_t seed,
                                   std::uint32_t n_max) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("q must be a probability");
  BranchSimResult out;
  out.trials = trials;
  out.pmf.assign(n_max + 1, 0.0);
  std::uint64_t beyond = 0;
  SplitMix64 stream(substream_seed(seed, 0x4252414e4348ull));  // branching tag
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint64_t reached = 1;  // the root
    std::uint64_t active = 1;
    bool capped = false;
    for (std::uint32_t gen = 0;; ++gen) {
      if (active == 0) break;
      if (gen >= depth_cap) {
        capped = true;
        break;
      }
      std::uint64_t next = 0;
      for (std::uint64_t i = 0; i < active; ++i)
        if (stream.next_unit() < q) next += 2;
      reached += next;
      active = next;
      // Once the count leaves the histogram range the trial can only land in
      // the lumped "beyond" bin; stop drawing for it.
      if (reached > n_max) break;
    }
    if (capped) ++out.depth_cap_hits;
    if (capped || reached > n_max)
      ++beyond;
    else
      out.pmf[reached] += 1.0;
  }
  for (double& p : out.pmf) p /= static_cast<double>(trials);
  out.beyond_mass = static_cast<double>(beyond) / static_cast<double>(trials);
  return out;
}

double branching_tv(const BranchPmf& exact, const BranchSimResult& sim,
                    std::uint32_t n_cut) {
  if (n_cut >= exact.pmf.size() || n_cut >= sim.pmf.size())
    throw std::invalid_argument("n_cut beyond histogram range");
  double tv = 0.0;
  double exact_cut = 0.0;
  double sim_cut = 0.0;
  for (std::uint32_t n = 1; n <= n_cut; ++n) {
    tv += std::abs(exact.pmf[n] - sim.pmf[n]);
    exact_cut += exact.pmf[n];
    sim_cut += sim.pmf[n];
  }
  tv += std::abs((1.0 - exact_cut) - (1.0 - sim_cut));
  return tv / 2.0;
}

LeafPmf leaf_pmf_exact(double q, std::uint32_t h) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("q must be a probability");
  if (h > 20) throw std::invalid_argument("leaf pmf limited to h <= 20");

  LeafPmf out;
  out.q = q;
  out.h = h;
  // D_0: one leaf, reached iff the node itself is marked.
  out.pmf = {1.0 - q, q};
  std::vector<double> conv;
  for (std::uint32_t depth = 1; depth <= h; ++depth) {
    // Root unmarked: zero leaves. Root marked: the two child subtrees
    // contribute independently.
    conv.assign(2 * (out.pmf.size() - 1) + 1, 0.0);
    for (std::size_t a = 0; a < out.pmf.size(); ++a) {
      if (out.pmf[a] == 0.0) continue;
      for (std::size_t b = 0; b < out.pmf.size(); ++b)
        conv[a + b] += out.pmf[a] * out.pmf[b];
    }
    for (double& p : conv) p *= q;
    conv[0] += 1.0 - q;
    out.pmf.swap(conv);
  }
  return out;
}

double leaf_tail(const LeafPmf& d, std::uint64_t t) {
  double tail = 0.0;
  for (std::size_t i = d.pmf.size(); i-- > 0;) {
    if (i < t) break;
    tail += d.pmf[i];
  }
  return tail;
}

LeafTailReport leaf_tail_check(double q, std::uint32_t h_max) {
  LeafTailReport rep;
  rep.q = q;
  rep.h_max = h_max;
  rep.worst_ratio = 0.0;
  for (std::uint32_t h = 1; h <= h_max; ++h) {
    const LeafPmf d = leaf_pmf_exact(q, h);
    double tail = 0.0;
    // Sweep t downward so each tail is an O(1) update.
    for (std::uint64_t t = d.pmf.size(); t-- > 1;) {
      tail += d.pmf[t];
      const double bound = std::pow(4.0, -static_cast<double>(h + t));
      const double ratio = tail / bound;
      if (ratio > rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_h = h;
        rep.worst_t = t;
      }
    }
  }
  rep.pass = rep.worst_ratio <= 1.0;
  return rep;
}

LeafMgfReport leaf_mgf_check(double q, std::uint32_t h_max, double lambda) {
  if (lambda > std::log(2.0) + 1e-12)
    throw std::invalid_argument("lambda must be at most ln 2");
  LeafMgfReport rep;
  rep.q = q;
  rep.lambda = lambda;
  rep.product = 1.0;
  bool ok = true;
  for (std::uint32_t h = 1; h <= h_max; ++h) {
    const LeafPmf d = leaf_pmf_exact(q, h);
    double mgf = 0.0;
    for (std::size_t t = 0; t < d.pmf.size(); ++t)
      mgf += d.pmf[t] * std::exp(lambda * static_cast<double>(t));
    const double bound = 1.0 + std::pow(4.0, -static_cast<double>(h));
    rep.mgf.push_back(mgf);
    rep.bound.push_back(bound);
    rep.product *= mgf;
    ok = ok && mgf <= bound;
  }
  ok = ok && rep.product <= 2.0;
  rep.pass = ok;
  return rep;
}

std::vector<std::uint64_t> sample_defectives(std::uint64_t n,
                                             std::uint64_t count,
                                             SplitMix64& stream) {
  if (count > n) throw std::invalid_argument("cannot sample more than n items");
  // Partial Fisher-Yates with the identity permutation stored lazily.
  std::unordered_map<std::uint64_t, std::uint64_t> perm;
  perm.reserve(count * 2);
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t j = i + stream.next_below(n - i);
    const auto it_i = perm.find(i);
    const std::uint64_t vi = it_i == perm.end() ? i : it_i->second;
    const auto it_j = perm.find(j);
    const std::uint64_t vj = it_j == perm.end() ? j : it_j->second;
    out.push_back(vj);
    perm[j] = vi;
  }
  std::sort(out.begin(), out.end());
  return out;
}

MeanBoundsReport mean_bounds_mc(const ProblemParams& params,
                                std::uint64_t trials, std::uint64_t seed) {
  if (trials < 2) throw std::invalid_argument("need at least 2 trials");
  MeanBoundsReport rep;
  rep.trials = trials;
  rep.bound_leaf = 6.0 * static_cast<double>(params.k);
  rep.bound_total =
      6.0 * static_cast<double>(params.k) * params.split_levels();

  double sum_leaf = 0, sumsq_leaf = 0, sum_total = 0, sumsq_total = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    ProblemParams p = params;
    p.seed = substream_seed(seed, stream_tag::kTrial, t);
    SplitMix64 sstream(substream_seed(p.seed, stream_tag::kDefectives));
    const auto S = sample_defectives(p.n, p.k, sstream);
    const ExplicitAssignment a(p);
    const Outcomes y = simulate_fast(a, S);
    DecodeTrace trace;
    decode(a, y, &trace);
    const ReachStats st = reach_stats(trace, S, p);
    const double leaf = static_cast<double>(st.nondefective_leaf);
    const double total = static_cast<double>(st.nondefective_total);
    sum_leaf += leaf;
    sumsq_leaf += leaf * leaf;
    sum_total += total;
    sumsq_total += total * total;
  }
  const double n = static_cast<double>(trials);
  rep.mean_leaf = sum_leaf / n;
  rep.mean_total = sum_total / n;
  const double var_leaf =
      (sumsq_leaf - n * rep.mean_leaf * rep.mean_leaf) / (n - 1);
  const double var_total =
      (sumsq_total - n * rep.mean_total * rep.mean_total) / (n - 1);
  rep.se_leaf = std::sqrt(std::max(var_leaf, 0.0) / n);
  rep.se_total = std::sqrt(std::max(var_total, 0.0) / n);
  rep.pass = rep.mean_leaf <= rep.bound_leaf && rep.mean_total <= rep.bound_total;
  return rep;
}

HashedPdReport hashed_pd_mean_mc(const ProblemParams& params, std::uint32_t r,
                                 std::uint64_t trials, std::uint64_t seed) {
  if (params.Ctil != 1)
    throw std::invalid_argument("this check requires Ctil = 1");
  if (params.C < 8) throw std::invalid_argument("this check requires C >= 8");
  if (trials < 2) throw std::invalid_argument("need at least 2 trials");

  HashedPdReport rep;
  rep.trials = trials;
  rep.bound = static_cast<double>(params.k) / 2.0;

  const std::uint32_t levels = params.split_levels();
  std::vector<double> sum(levels, 0), sumsq(levels, 0);
  std::vector<std::uint64_t> samples(levels, 0), discarded(levels, 0);

  for (std::uint64_t t = 0; t < trials; ++t) {
    ProblemParams p = params;
    p.seed = substream_seed(seed, stream_tag::kTrial, t);
    SplitMix64 sstream(substream_seed(p.seed, stream_tag::kDefectives));
    const auto S = sample_defectives(p.n, p.k, sstream);
    const HashAssignment a(p, r);
    const Outcomes y = simulate_fast(a, S);
    DecodeTrace trace;
    decode(a, y, &trace);

    for (std::uint32_t level = p.ell_min; level < p.ell_max; ++level) {
      const std::uint32_t idx = level - p.ell_min;
      const auto& pd = trace.pd_nodes[idx];
      if (pd.size() > 4 * p.k) {
        ++discarded[idx];
        continue;
      }
      // Distinct defective ancestors at this level, ascending.
      std::vector<std::uint64_t> defective_nodes;
      for (std::uint64_t item : S) {
        const std::uint64_t node = item >> (p.ell_max - level);
        if (defective_nodes.empty() || defective_nodes.back() != node)
          defective_nodes.push_back(node);
      }
      std::uint64_t hits = 0;
      for (std::uint64_t node : pd) {
        if (std::binary_search(defective_nodes.begin(), defective_nodes.end(),
                               node))
          continue;
        if (y.level_bit(level, 0, a.level_slot(level, 0, node))) ++hits;
      }
      ++samples[idx];
      const double v = static_cast<double>(hits);
      sum[idx] += v;
      sumsq[idx] += v * v;
    }
  }

  bool ok = true;
  for (std::uint32_t idx = 0; idx < levels; ++idx) {
    HashedPdLevel lv;
    lv.level = params.ell_min + idx;
    lv.samples = samples[idx];
    lv.discarded = discarded[idx];
    if (samples[idx] > 1) {
      const double n = static_cast<double>(samples[idx]);
      lv.mean = sum[idx] / n;
      lv.variance = (sumsq[idx] - n * lv.mean * lv.mean) / (n - 1);
    }
    ok = ok && lv.mean <= rep.bound;
    rep.levels.push_back(lv);
  }
  rep.pass = ok;
  return rep;
}

}  // namespace splitpool

// Command-line front end: build designs, run seeded Monte-Carlo experiments
// and parameter sweeps, run the verification suite, and benchmark decoding.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage/validation error,
// 3 verification-check failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "splitpool/assignment.hpp"
#include "splitpool/decoder.hpp"
#include "splitpool/design_io.hpp"
#include "splitpool/gf2m.hpp"
#include "splitpool/hash_assignment.hpp"
#include "splitpool/lemmas.hpp"
#include "splitpool/montecarlo.hpp"
#include "splitpool/outcomes.hpp"
#include "splitpool/saffron.hpp"

namespace {

using nlohmann::ordered_json;
using namespace splitpool;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCheckFailed = 3;

// Writes to --out, or stdout when no path was given.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    if (!std::cout) throw std::ios_base::failure("writing to stdout failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open output file: " + path);
  out << content;
  out.flush();
  if (!out) throw std::ios_base::failure("writing output file failed: " + path);
}

struct DesignArgs {
  std::uint64_t n = 0, k = 0;
  std::uint32_t C = 16, Cprime = 3, Ctil = 0;
  std::uint64_t seed = 0;
  std::string variant = "explicit";
  std::uint32_t r = 0;
  std::string out;
};

std::uint32_t effective_ctil(const std::string& variant, std::uint32_t ctil) {
  if (ctil != 0) return ctil;
  return variant == "hashed" ? 2 : 1;  // defaults differ per variant
}

int cmd_design(const DesignArgs& args) {
  const ProblemParams p =
      make_params(args.n, args.k, args.C, args.Cprime,
                  effective_ctil(args.variant, args.Ctil), args.seed);
  if (p.below_recommended_C())
    std::cerr << "warning: C < 16 voids the analytical error guarantees\n";
  ordered_json j;
  if (args.variant == "explicit") {
    j = design_to_json(ExplicitAssignment(p));
  } else if (args.variant == "hashed") {
    const std::uint32_t r = args.r ? args.r : default_independence(p.k);
    j = design_to_json(HashAssignment(p, r));
  } else {
    throw std::invalid_argument("design supports variants explicit|hashed");
  }
  write_output(args.out, j.dump(2) + "\n");
  return kExitOk;
}

struct SimulateArgs {
  std::uint64_t n = 0, k = 0;
  std::uint32_t C = 16, Cprime = 3, Ctil = 0;
  std::uint64_t seed = 0;
  std::string variant = "explicit";
  std::uint32_t r = 0;
  std::uint32_t cb = 8;
  std::uint64_t trials = 100;
  std::uint64_t defectives = 0;
  std::string out;
};

SimulationConfig to_config(const SimulateArgs& a) {
  SimulationConfig cfg;
  cfg.base = make_params(a.n, a.k, a.C, a.Cprime,
                         effective_ctil(a.variant, a.Ctil), a.seed);
  cfg.variant = parse_variant(a.variant);
  cfg.r = a.r;
  cfg.saffron_cb = a.cb;
  cfg.trials = a.trials;
  cfg.defectives = a.defectives;
  return cfg;
}

int cmd_simulate(const SimulateArgs& args) {
  const SimulationConfig cfg = to_config(args);
  if (cfg.base.below_recommended_C() && cfg.variant != Variant::kSaffron)
    std::cerr << "warning: C < 16 voids the analytical error guarantees\n";
  const auto rows = run_trials(cfg);
  std::ostringstream csv;
  write_csv_header(csv);
  write_csv_rows(csv, rows);
  write_csv_summary(csv, summarize(rows));
  write_output(args.out, csv.str());
  return kExitOk;
}

struct SweepArgs {
  std::vector<std::uint64_t> n{1024};
  std::vector<std::uint64_t> k{16};
  std::vector<std::uint32_t> C{16};
  std::vector<std::uint32_t> Cprime{3};
  std::vector<std::uint32_t> Ctil{0};
  std::vector<std::string> variant{"explicit"};
  std::uint32_t r = 0;
  std::uint32_t cb = 8;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_sweep(const SweepArgs& args) {
  std::ostringstream csv;
  write_csv_header(csv);
  std::uint64_t cell = 0;
  for (const std::string& variant : args.variant)
    for (std::uint64_t n : args.n)
      for (std::uint64_t k : args.k)
        for (std::uint32_t C : args.C)
          for (std::uint32_t Cprime : args.Cprime)
            for (std::uint32_t Ctil : args.Ctil) {
              SimulateArgs cell_args;
              cell_args.n = n;
              cell_args.k = k;
              cell_args.C = C;
              cell_args.Cprime = Cprime;
              cell_args.Ctil = Ctil;
              cell_args.variant = variant;
              cell_args.r = args.r;
              cell_args.cb = args.cb;
              cell_args.trials = args.trials;
              // Every cell gets its own master seed so cells are independent
              // and individually reproducible.
              cell_args.seed =
                  substream_seed(args.seed, stream_tag::kSweepCell, cell);
              const SimulationConfig cfg = to_config(cell_args);
              const auto rows = run_trials(cfg);
              write_csv_rows(csv, rows);
              const TrialSummary s = summarize(rows);
              csv << "# cell variant=" << variant << " n=" << cfg.base.n
                  << " k=" << cfg.base.k << " C=" << C << " Cprime=" << Cprime
                  << " Ctil=" << cfg.base.Ctil << " trials=" << s.trials
                  << " error_rate=" << s.error_rate
                  << " mean_n_total=" << s.mean_n_total
                  << " mean_n_leaf_pd=" << s.mean_n_leaf_pd << "\n";
              ++cell;
            }
  write_output(args.out, csv.str());
  return kExitOk;
}

struct VerifyArgs {
  std::string check = "all";
  double q = -1;
  std::uint32_t hmax = 10;
  double lambda = 0;  // 0 means ln 2
  std::uint32_t m = 3;
  std::uint32_t r = 3;
  std::uint32_t b = 0;  // 0 means full width
  std::uint64_t n = 1 << 14;
  std::uint64_t k = 64;
  std::uint32_t C = 16;
  std::uint64_t trials = 0;  // 0 means per-check default
  std::uint64_t seed = 1;
  std::string out;
};

ordered_json report_entry(const std::string& check, double bound,
                          double observed, double stderr_est, bool pass) {
  ordered_json j;
  j["check"] = check;
  j["bound"] = bound;
  j["observed"] = observed;
  j["stderr"] = stderr_est;
  j["pass"] = pass;
  return j;
}

// Exact-pmf bound plus Monte-Carlo agreement for the subtree-growth process.
void verify_branching(const VerifyArgs& args, ordered_json& checks) {
  const double q = args.q < 0 ? 1.0 / 16 : args.q;
  const std::uint64_t trials = args.trials ? args.trials : 100000;

  const BranchPmf exact = branching_pmf_exact(q, 99);
  double worst = 0;
  for (std::uint32_t n = 1; n < exact.pmf.size(); ++n) {
    const double bound = std::pow(2.0, -static_cast<double>(n - 1));
    worst = std::max(worst, exact.pmf[n] / bound);
  }
  checks.push_back(report_entry("branching-pmf-bound", 1.0, worst, 0.0,
                                worst <= 1.0));

  const BranchSimResult sim =
      branching_simulate(q, 64, trials, args.seed, 15);
  const double tv = branching_tv(exact, sim, 15);
  checks.push_back(report_entry("branching-mc-tv", 0.01, tv, 0.0, tv < 0.01));
}

void verify_leaf_tail(const VerifyArgs& args, ordered_json& checks) {
  const double q = args.q < 0 ? 1.0 / 12 : args.q;
  const LeafTailReport rep = leaf_tail_check(q, args.hmax);
  checks.push_back(report_entry("leaf-tail-bound", 1.0, rep.worst_ratio, 0.0,
                                rep.pass));
}

void verify_mgf(const VerifyArgs& args, ordered_json& checks) {
  const double q = args.q < 0 ? 1.0 / 12 : args.q;
  const double lambda = args.lambda > 0 ? args.lambda : std::log(2.0);
  const LeafMgfReport rep = leaf_mgf_check(q, args.hmax, lambda);
  double worst = 0;
  for (std::size_t i = 0; i < rep.mgf.size(); ++i)
    worst = std::max(worst, rep.mgf[i] / rep.bound[i]);
  checks.push_back(report_entry("mgf-per-height", 1.0, worst, 0.0,
                                worst <= 1.0));
  checks.push_back(report_entry("mgf-sum-product", 2.0, rep.product, 0.0,
                                rep.product <= 2.0));
}

void verify_rwise_cmd(const VerifyArgs& args, ordered_json& checks) {
  std::vector<std::uint64_t> points(args.r);
  for (std::uint32_t i = 0; i < args.r; ++i) points[i] = i + 1;
  const std::uint32_t out_bits = args.b ? args.b : args.m;
  const RwiseReport rep = verify_rwise(args.m, points, out_bits);
  checks.push_back(report_entry(
      "rwise-exact", static_cast<double>(rep.expected_multiplicity),
      static_cast<double>(rep.max_count), 0.0, rep.exact));
}

void verify_mean_bounds(const VerifyArgs& args, ordered_json& checks) {
  const std::uint64_t trials = args.trials ? args.trials : 1000;
  const ProblemParams p = make_params(args.n, args.k, args.C, 3, 1, 0);
  const MeanBoundsReport rep = mean_bounds_mc(p, trials, args.seed);
  checks.push_back(report_entry("mean-leaf", rep.bound_leaf, rep.mean_leaf,
                                rep.se_leaf, rep.mean_leaf <= rep.bound_leaf));
  checks.push_back(report_entry("mean-total", rep.bound_total, rep.mean_total,
                                rep.se_total,
                                rep.mean_total <= rep.bound_total));
}

void verify_hashed_pd(const VerifyArgs& args, ordered_json& checks) {
  const std::uint64_t trials = args.trials ? args.trials : 2000;
  const ProblemParams p = make_params(args.n, args.k, args.C, 3, 1, 0);
  const std::uint32_t r = args.r ? args.r : default_independence(p.k);
  const HashedPdReport rep = hashed_pd_mean_mc(p, r, trials, args.seed);
  double worst = 0;
  double worst_se = 0;
  for (const HashedPdLevel& lv : rep.levels) {
    if (lv.mean >= worst) {
      worst = lv.mean;
      worst_se = lv.samples > 0
                     ? std::sqrt(lv.variance / static_cast<double>(lv.samples))
                     : 0.0;
    }
  }
  checks.push_back(
      report_entry("hashed-pd-mean", rep.bound, worst, worst_se, rep.pass));
}

void verify_moduli(ordered_json& checks) {
  bool ok = true;
  for (std::uint32_t m = 1; m <= Gf2mField::kMaxDegree; ++m) {
    const std::uint64_t mod = gf2m_modulus_for_degree(m);
    if (poly_degree(mod) != m || !gf2m_is_irreducible(mod)) ok = false;
  }
  checks.push_back(report_entry("moduli-irreducible", 32.0,
                                ok ? 32.0 : 0.0, 0.0, ok));
}

int cmd_verify(const VerifyArgs& args) {
  ordered_json checks = ordered_json::array();
  const std::string& c = args.check;
  bool known = false;
  if (c == "branching" || c == "all") verify_branching(args, checks), known = true;
  if (c == "leaf-tail" || c == "all") verify_leaf_tail(args, checks), known = true;
  if (c == "mgf" || c == "all") verify_mgf(args, checks), known = true;
  if (c == "rwise" || c == "all") verify_rwise_cmd(args, checks), known = true;
  if (c == "mean-bounds" || c == "all") verify_mean_bounds(args, checks), known = true;
  if (c == "hashed-pd" || c == "all") verify_hashed_pd(args, checks), known = true;
  if (c == "moduli" || c == "all") verify_moduli(checks), known = true;
  if (!known) throw std::invalid_argument("unknown check: " + c);

  bool all_pass = true;
  for (const auto& entry : checks)
    if (!entry.at("pass").get<bool>()) all_pass = false;

  ordered_json j;
  j["checks"] = checks;
  j["pass"] = all_pass;
  write_output(args.out, j.dump(2) + "\n");
  return all_pass ? kExitOk : kExitCheckFailed;
}

struct BenchArgs {
  std::uint64_t n = 1 << 20;
  std::uint64_t k = 256;
  std::uint32_t C = 16, Cprime = 3, Ctil = 0;
  std::string variant = "explicit";
  std::uint32_t r = 0;
  std::uint64_t seed = 1;
  std::uint32_t warmup = 2;
  std::uint32_t iters = 9;
  std::string out;
};

int cmd_bench(const BenchArgs& args) {
  const ProblemParams p =
      make_params(args.n, args.k, args.C, args.Cprime,
                  effective_ctil(args.variant, args.Ctil), args.seed);
  std::unique_ptr<TestAssignment> assignment;
  std::uint32_t r = 0;
  if (args.variant == "hashed") {
    r = args.r ? args.r : default_independence(p.k);
    assignment = std::make_unique<HashAssignment>(p, r);
  } else if (args.variant == "explicit") {
    assignment = std::make_unique<ExplicitAssignment>(p);
  } else {
    throw std::invalid_argument("bench supports variants explicit|hashed");
  }

  SplitMix64 sstream(substream_seed(p.seed, stream_tag::kDefectives));
  const auto S = sample_defectives(p.n, p.k, sstream);
  const Outcomes y = simulate_fast(*assignment, S);

  const auto* hashed = dynamic_cast<const HashAssignment*>(assignment.get());
  for (std::uint32_t i = 0; i < args.warmup; ++i) decode(*assignment, y);

  std::vector<std::uint64_t> times;
  std::uint64_t nodes_visited = 0;
  std::uint64_t muls = 0;
  for (std::uint32_t i = 0; i < args.iters; ++i) {
    if (hashed) hashed->reset_eval_count();
    const DecodeResult res = decode(*assignment, y);
    times.push_back(res.decode_ns);
    nodes_visited = res.nodes_visited;
    if (hashed) muls = hashed->mul_count();
  }
  std::sort(times.begin(), times.end());

  ordered_json j;
  j["variant"] = args.variant;
  j["n"] = p.n;
  j["k"] = p.k;
  j["C"] = p.C;
  j["Cprime"] = p.Cprime;
  j["Ctil"] = p.Ctil;
  if (r) j["r"] = r;
  j["t"] = num_tests(p);
  j["iters"] = args.iters;
  j["median_decode_ns"] = times.empty() ? 0 : times[times.size() / 2];
  j["min_decode_ns"] = times.empty() ? 0 : times.front();
  j["nodes_visited"] = nodes_visited;
  if (hashed) j["field_muls_per_decode"] = muls;
  write_output(args.out, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sublinear group-testing designs: build, simulate, verify, bench"};
  app.require_subcommand(1);

  DesignArgs design_args;
  CLI::App* design = app.add_subcommand(
      "design", "Write a deterministic design dump (JSON)");
  design->add_option("--n", design_args.n, "number of items")->required();
  design->add_option("--k", design_args.k, "defective-count bound")->required();
  design->add_option("--C", design_args.C, "split-level test factor");
  design->add_option("--Cprime", design_args.Cprime, "final-sequence factor");
  design->add_option("--Ctil", design_args.Ctil,
                     "repetitions per split level (0 = variant default)");
  design->add_option("--seed", design_args.seed, "master seed");
  design->add_option("--variant", design_args.variant, "explicit|hashed")
      ->check(CLI::IsMember({"explicit", "hashed"}));
  design->add_option("--r", design_args.r,
                     "hash independence parameter (0 = default for k)");
  design->add_option("--out", design_args.out, "output path (default stdout)");

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run seeded recovery trials, write CSV");
  simulate->add_option("--n", sim_args.n, "number of items")->required();
  simulate->add_option("--k", sim_args.k, "defective-count bound")->required();
  simulate->add_option("--C", sim_args.C, "split-level test factor");
  simulate->add_option("--Cprime", sim_args.Cprime, "final-sequence factor");
  simulate->add_option("--Ctil", sim_args.Ctil,
                       "repetitions per split level (0 = variant default)");
  simulate->add_option("--seed", sim_args.seed, "master seed");
  simulate->add_option("--variant", sim_args.variant,
                       "explicit|hashed|saffron")
      ->check(CLI::IsMember({"explicit", "hashed", "saffron"}));
  simulate->add_option("--r", sim_args.r, "hash independence parameter");
  simulate->add_option("--cb", sim_args.cb, "baseline bundle factor");
  simulate->add_option("--trials", sim_args.trials, "number of trials")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--defectives", sim_args.defectives,
                       "defectives per trial (0 = k)");
  simulate->add_option("--out", sim_args.out, "output path (default stdout)");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run trials across a parameter grid, write CSV");
  sweep->add_option("--n", sweep_args.n, "item counts")->delimiter(',');
  sweep->add_option("--k", sweep_args.k, "defective bounds")->delimiter(',');
  sweep->add_option("--C", sweep_args.C, "split-level factors")->delimiter(',');
  sweep->add_option("--Cprime", sweep_args.Cprime, "final-sequence factors")
      ->delimiter(',');
  sweep->add_option("--Ctil", sweep_args.Ctil,
                    "repetition counts (0 = variant default)")
      ->delimiter(',');
  sweep->add_option("--variant", sweep_args.variant,
                    "variants (explicit|hashed|saffron)")
      ->delimiter(',');
  sweep->add_option("--r", sweep_args.r, "hash independence parameter");
  sweep->add_option("--cb", sweep_args.cb, "baseline bundle factor");
  sweep->add_option("--trials", sweep_args.trials, "trials per cell")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_args.seed, "master seed");
  sweep->add_option("--out", sweep_args.out, "output path (default stdout)");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run analytical/statistical checks, write a JSON report");
  verify->add_option(
      "--check", verify_args.check,
      "branching|leaf-tail|mgf|rwise|mean-bounds|hashed-pd|moduli|all");
  verify->add_option("--q", verify_args.q, "marking probability");
  verify->add_option("--hmax", verify_args.hmax, "maximum height");
  verify->add_option("--lambda", verify_args.lambda,
                     "MGF exponent (0 = ln 2)");
  verify->add_option("--m", verify_args.m, "field degree for rwise");
  verify->add_option("--r", verify_args.r,
                     "independence parameter (rwise/hashed-pd)");
  verify->add_option("--b", verify_args.b,
                     "truncated output bits for rwise (0 = full width)");
  verify->add_option("--n", verify_args.n, "items for Monte-Carlo checks");
  verify->add_option("--k", verify_args.k, "defective bound for Monte-Carlo checks");
  verify->add_option("--C", verify_args.C, "split-level factor");
  verify->add_option("--trials", verify_args.trials,
                     "trial count (0 = per-check default)");
  verify->add_option("--seed", verify_args.seed, "master seed");
  verify->add_option("--out", verify_args.out, "output path (default stdout)");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench", "Time decoding on one configuration, write a JSON report");
  bench->add_option("--n", bench_args.n, "number of items");
  bench->add_option("--k", bench_args.k, "defective-count bound");
  bench->add_option("--C", bench_args.C, "split-level test factor");
  bench->add_option("--Cprime", bench_args.Cprime, "final-sequence factor");
  bench->add_option("--Ctil", bench_args.Ctil,
                    "repetitions per split level (0 = variant default)");
  bench->add_option("--variant", bench_args.variant, "explicit|hashed")
      ->check(CLI::IsMember({"explicit", "hashed"}));
  bench->add_option("--r", bench_args.r, "hash independence parameter");
  bench->add_option("--seed", bench_args.seed, "master seed");
  bench->add_option("--warmup", bench_args.warmup, "warmup decodes");
  bench->add_option("--iters", bench_args.iters, "measured decodes")
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_args.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (design->parsed()) return cmd_design(design_args);
    if (simulate->parsed()) return cmd_simulate(sim_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (verify->parsed()) return cmd_verify(verify_args);
    if (bench->parsed()) return cmd_bench(bench_args);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "splitpool/params.hpp"

namespace splitpool {

enum class Variant { kExplicit, kHashed, kSaffron };

const char* variant_name(Variant v);
Variant parse_variant(const std::string& name);  // throws on unknown name

// One row of the experiment CSV.
struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint32_t C = 0;       // 0 for saffron
  std::uint32_t Cprime = 0;  // 0 for saffron
  std::uint32_t Ctil = 0;    // 0 for saffron
  std::uint32_t r = 0;       // 0 unless hashed
  Variant variant = Variant::kExplicit;
  std::uint64_t t = 0;  // test count
  bool success = false; // estimate equals the true defective set
  std::uint64_t n_total = 0;    // ground-truth non-defective PD nodes, all levels
  std::uint64_t n_leaf_pd = 0;  // PD leaves entering the final filter
  std::uint64_t decode_ns = 0;
  std::uint64_t seed = 0;  // this trial's derived seed
};

struct SimulationConfig {
  ProblemParams base;  // base.seed is the master seed
  Variant variant = Variant::kExplicit;
  std::uint32_t r = 0;          // hashed only; 0 means the default for k
  std::uint32_t saffron_cb = 8; // saffron only
  std::uint64_t trials = 0;
  std::uint64_t defectives = 0; // |S| per trial; 0 means k
};

// Runs config.trials independent trials. Each trial derives its own seed from
// the master, draws a fresh uniform defective set, builds a fresh design,
// simulates, decodes, and records the result. Trials fan out across workers
// (hardware concurrency, capped by the SPLITPOOL_THREADS environment
// variable); rows come back ordered by trial id regardless of completion
// order.
std::vector<TrialRecord> run_trials(const SimulationConfig& config);

// Worker count used by run_trials for a given trial count.
unsigned worker_count(std::uint64_t trials);

inline constexpr const char* kCsvHeader =
    "trial,n,k,C,Cprime,Ctil,r,variant,t,success,n_total,n_leaf_pd,decode_ns,"
    "seed";

void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, std::span<const TrialRecord> rows);

struct TrialSummary {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double error_rate = 0;
  double mean_n_total = 0;
  double mean_n_leaf_pd = 0;
  double mean_decode_ns = 0;
};
TrialSummary summarize(std::span<const TrialRecord> rows);
// Emits "# summary ..." (a comment line; data rows keep the schema).
void write_csv_summary(std::ostream& out, const TrialSummary& s);

}  // namespace splitpool

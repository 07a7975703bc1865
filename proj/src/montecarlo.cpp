#include "splitpool/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "splitpool/assignment.hpp"
#include "splitpool/decoder.hpp"
#include "splitpool/hash_assignment.hpp"
#include "splitpool/lemmas.hpp"
#include "splitpool/outcomes.hpp"
#include "splitpool/saffron.hpp"

namespace splitpool {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kExplicit: return "explicit";
    case Variant::kHashed: return "hashed";
    case Variant::kSaffron: return "saffron";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  if (name == "explicit") return Variant::kExplicit;
  if (name == "hashed") return Variant::kHashed;
  if (name == "saffron") return Variant::kSaffron;
  throw std::invalid_argument("unknown variant: " + name);
}

unsigned worker_count(std::uint64_t trials) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("SPLITPOOL_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap >= 1 && cap < 4096 &&
        cap < static_cast<unsigned long>(workers))
      workers = static_cast<unsigned>(cap);
  }
  if (trials < workers) workers = trials ? static_cast<unsigned>(trials) : 1;
  return workers;
}

namespace {

TrialRecord run_one(const SimulationConfig& config, std::uint64_t trial) {
  const std::uint64_t trial_seed =
      substream_seed(config.base.seed, stream_tag::kTrial, trial);
  const std::uint64_t want =
      config.defectives ? config.defectives : config.base.k;

  TrialRecord rec;
  rec.trial = trial;
  rec.variant = config.variant;
  rec.seed = trial_seed;

  SplitMix64 sstream(substream_seed(trial_seed, stream_tag::kDefectives));

  if (config.variant == Variant::kSaffron) {
    const SaffronDesign d = make_saffron(config.base.n, config.base.k,
                                         config.saffron_cb, trial_seed);
    const auto S = sample_defectives(d.n, want, sstream);
    rec.n = d.n;
    rec.k = d.k;
    rec.t = d.num_tests();
    const SaffronOutcomes y = saffron_simulate(d, S);
    const auto start = std::chrono::steady_clock::now();
    const auto estimate = saffron_decode(d, y);
    rec.decode_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now() - start)
            .count());
    rec.success = estimate.size() == S.size() &&
                  std::equal(estimate.begin(), estimate.end(), S.begin());
    return rec;
  }

  ProblemParams p = config.base;
  p.seed = trial_seed;
  rec.n = p.n;
  rec.k = p.k;
  rec.C = p.C;
  rec.Cprime = p.Cprime;
  rec.Ctil = p.Ctil;
  rec.t = num_tests(p);

  const auto S = sample_defectives(p.n, want, sstream);

  auto finish = [&](const TestAssignment& a) {
    const Outcomes y = simulate_fast(a, S);
    DecodeTrace trace;
    const DecodeResult res = decode(a, y, &trace);
    const ReachStats st = reach_stats(trace, S, p);
    rec.success = res.estimate.size() == S.size() &&
                  std::equal(res.estimate.begin(), res.estimate.end(),
                             S.begin());
    rec.n_total = st.nondefective_total;
    rec.n_leaf_pd = res.n_leaf_pd;
    rec.decode_ns = res.decode_ns;
  };

  if (config.variant == Variant::kHashed) {
    const std::uint32_t r =
        config.r ? config.r : default_independence(p.k);
    rec.r = r;
    finish(HashAssignment(p, r));
  } else {
    finish(ExplicitAssignment(p));
  }
  return rec;
}

}  // namespace

std::vector<TrialRecord> run_trials(const SimulationConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("need at least one trial");
  const std::uint64_t want =
      config.defectives ? config.defectives : config.base.k;
  if (want > config.base.k)
    throw std::invalid_argument("defectives per trial cannot exceed k");

  std::vector<TrialRecord> rows(config.trials);
  const unsigned workers = worker_count(config.trials);
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < config.trials; ++i)
      rows[i] = run_one(config, i);
    return rows;
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= config.trials) return;
        try {
          rows[i] = run_one(config, i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << "\n"; }

void write_csv_rows(std::ostream& out, std::span<const TrialRecord> rows) {
  for (const TrialRecord& r : rows) {
    out << r.trial << ',' << r.n << ',' << r.k << ',' << r.C << ','
        << r.Cprime << ',' << r.Ctil << ',' << r.r << ','
        << variant_name(r.variant) << ',' << r.t << ',' << (r.success ? 1 : 0)
        << ',' << r.n_total << ',' << r.n_leaf_pd << ',' << r.decode_ns << ','
        << r.seed << "\n";
  }
}

TrialSummary summarize(std::span<const TrialRecord> rows) {
  TrialSummary s;
  s.trials = rows.size();
  double sum_total = 0, sum_leaf = 0, sum_ns = 0;
  for (const TrialRecord& r : rows) {
    if (!r.success) ++s.failures;
    sum_total += static_cast<double>(r.n_total);
    sum_leaf += static_cast<double>(r.n_leaf_pd);
    sum_ns += static_cast<double>(r.decode_ns);
  }
  if (s.trials > 0) {
    const double n = static_cast<double>(s.trials);
    s.error_rate = static_cast<double>(s.failures) / n;
    s.mean_n_total = sum_total / n;
    s.mean_n_leaf_pd = sum_leaf / n;
    s.mean_decode_ns = sum_ns / n;
  }
  return s;
}

void write_csv_summary(std::ostream& out, const TrialSummary& s) {
  out << "# summary trials=" << s.trials << " failures=" << s.failures
      << " error_rate=" << s.error_rate << " mean_n_total=" << s.mean_n_total
      << " mean_n_leaf_pd=" << s.mean_n_leaf_pd
      << " mean_decode_ns=" << s.mean_decode_ns << "\n";
}

}  // namespace splitpool

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "splitpool/lemmas.hpp"
#include "splitpool/prng.hpp"
#include "splitpool/saffron.hpp"

using namespace splitpool;

TEST_CASE("bundle counts and test counts at pinned values") {
  const SaffronDesign d = make_saffron(1024, 16, 8, 7);
  CHECK(d.bundles == 512);  // 8 * 16 * 4
  CHECK(d.item_bits == 10);
  CHECK(d.num_tests() == 10240);

  const SaffronDesign k1 = make_saffron(256, 1, 8, 7);
  CHECK(k1.bundles == 8);  // max(1, log2 1) = 1

  CHECK_THROWS_AS(make_saffron(1000, 16, 8, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_saffron(1024, 3, 8, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_saffron(1024, 16, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_saffron(16, 32, 8, 0), std::invalid_argument);
}

TEST_CASE("inclusion probability is 1/k at 4-sigma resolution") {
  const SaffronDesign d = make_saffron(1 << 12, 16, 8, 99);
  std::uint64_t included = 0;
  std::uint64_t pairs = 0;
  for (std::uint64_t b = 0; b < 200; ++b)
    for (std::uint64_t item = 0; item < d.n; item += 3) {
      ++pairs;
      if (d.includes(b, item)) ++included;
    }
  const double p_hat =
      static_cast<double>(included) / static_cast<double>(pairs);
  const double p = 1.0 / static_cast<double>(d.k);
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(pairs));
  CHECK(std::abs(p_hat - p) < 4 * sigma);
}

TEST_CASE("bundle encoding at pinned values") {
  // item_bits = 6, items 0b001011 and 0b110000.
  const std::vector<std::uint64_t> one{0b001011};
  const auto w1 = saffron_encode(one, 6);
  CHECK(w1[0] == 0b001011);
  CHECK(w1[1] == 0b110100);

  const std::vector<std::uint64_t> empty;
  const auto w0 = saffron_encode(empty, 6);
  CHECK(w0[0] == 0);
  CHECK(w0[1] == 0);

  const std::vector<std::uint64_t> two{0b001011, 0b110000};
  const auto w2 = saffron_encode(two, 6);
  CHECK(w2[0] == 0b111011);
  CHECK(w2[1] == 0b111111);
}

TEST_CASE("a bundle decodes exactly when it holds one defective") {
  // Singleton bundles round-trip.
  SplitMix64 g(31337);
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t item = g.next_bits(10);
    const std::vector<std::uint64_t> members{item};
    const auto w = saffron_encode(members, 10);
    CHECK(w[0] == item);
    CHECK(w[0] == (~w[1] & 0x3ff));
  }
  // Any two distinct items break the complement identity: some bit differs,
  // so that position is 1 in both halves. Exhaustive at n = 64.
  for (std::uint64_t a = 0; a < 64; ++a)
    for (std::uint64_t b = a + 1; b < 64; ++b) {
      const std::vector<std::uint64_t> members{a, b};
      const auto w = saffron_encode(members, 6);
      CHECK(w[0] != (~w[1] & 0x3f));
    }
  // Empty bundles never pass the check either (0 != all-ones).
  const auto w = saffron_encode(std::vector<std::uint64_t>{}, 6);
  CHECK(w[0] != (~w[1] & 0x3f));
}

TEST_CASE("decode returns exactly the isolated defectives, never more") {
  SplitMix64 g(271828);
  int exact = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const SaffronDesign d = make_saffron(1 << 10, 8, 8, g.next());
    const auto S = sample_defectives(d.n, 8, g);
    const SaffronOutcomes y = saffron_simulate(d, S);
    const auto estimate = saffron_decode(d, y);
    // No false positives, ever.
    CHECK(std::includes(S.begin(), S.end(), estimate.begin(), estimate.end()));
    // Exact recovery iff every defective is isolated somewhere.
    const bool isolated = saffron_all_isolated(d, S);
    CHECK((estimate == S) == isolated);
    if (isolated) ++exact;
  }
  // cb=8 keeps the failure rate low; expect mostly-exact recovery.
  CHECK(exact >= 50);
}

TEST_CASE("simulation is deterministic given the seed") {
  const SaffronDesign d = make_saffron(512, 4, 8, 12);
  const std::vector<std::uint64_t> S{7, 100, 300, 444};
  CHECK(saffron_simulate(d, S) == saffron_simulate(d, S));
}

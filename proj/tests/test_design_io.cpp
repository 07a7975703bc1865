#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "splitpool/design_io.hpp"
#include "splitpool/prng.hpp"

using namespace splitpool;
using nlohmann::ordered_json;

namespace {
std::span<const unsigned char> bytes_of(const std::string& s) {
  return {reinterpret_cast<const unsigned char*>(s.data()), s.size()};
}
}  // namespace

TEST_CASE("base64 matches the reference vectors") {
  CHECK(base64_encode(bytes_of("")) == "");
  CHECK(base64_encode(bytes_of("f")) == "Zg==");
  CHECK(base64_encode(bytes_of("fo")) == "Zm8=");
  CHECK(base64_encode(bytes_of("foo")) == "Zm9v");
  CHECK(base64_encode(bytes_of("foob")) == "Zm9vYg==");
  CHECK(base64_encode(bytes_of("fooba")) == "Zm9vYmE=");
  CHECK(base64_encode(bytes_of("foobar")) == "Zm9vYmFy");

  const auto back = base64_decode("Zm9vYmE=");
  CHECK(std::string(back.begin(), back.end()) == "fooba");
}

TEST_CASE("base64 round-trips random binary data") {
  SplitMix64 g(31);
  for (int len : {0, 1, 2, 3, 4, 17, 64, 255}) {
    std::vector<unsigned char> data(static_cast<std::size_t>(len));
    for (auto& b : data) b = static_cast<unsigned char>(g.next_bits(8));
    const std::string text = base64_encode(data);
    CHECK(text.size() == (data.size() + 2) / 3 * 4);
    CHECK(base64_decode(text) == data);
  }
}

TEST_CASE("base64 decode rejects malformed input") {
  CHECK_THROWS_AS(base64_decode("AQIDB"), std::invalid_argument);   // length
  CHECK_THROWS_AS(base64_decode("A==="), std::invalid_argument);    // padding
  CHECK_THROWS_AS(base64_decode("=AAA"), std::invalid_argument);    // padding
  CHECK_THROWS_AS(base64_decode("AA=A"), std::invalid_argument);    // data after pad
  CHECK_THROWS_AS(base64_decode("AB!?"), std::invalid_argument);    // alphabet
}

TEST_CASE("slot packing is little-endian and round-trips") {
  const std::vector<std::uint32_t> one = {0x04030201u};
  // Bytes 01 02 03 04.
  CHECK(pack_slots_base64(one) == "AQIDBA==");
  CHECK(unpack_slots_base64("AQIDBA==") == one);

  SplitMix64 g(7);
  std::vector<std::uint32_t> slots(97);
  for (auto& s : slots) s = static_cast<std::uint32_t>(g.next_bits(32));
  CHECK(unpack_slots_base64(pack_slots_base64(slots)) == slots);

  // 1 byte decodes fine as base64 but is not a whole number of slots.
  CHECK_THROWS_AS(unpack_slots_base64("AQ=="), std::invalid_argument);
}

TEST_CASE("explicit design dump carries every block and round-trips") {
  const ProblemParams p = make_params(64, 4, 4, 1, 2, 9);
  const ExplicitAssignment a(p);
  const ordered_json j = design_to_json(a);

  CHECK(j["format"] == "splitpool-design-v1");
  CHECK(j["variant"] == "explicit");
  CHECK(j["params"]["n"] == 64);
  CHECK(j["params"]["k"] == 4);
  CHECK(j["params"]["seed"] == 9);
  CHECK(j["params"]["num_tests"] == num_tests(p));
  CHECK(j["layout"]["level_block_len"] == 16);
  CHECK(j["layout"]["final_block_len"] == 8);

  const std::size_t level_blocks = p.split_levels() * p.Ctil;
  REQUIRE(j["level_slots"].size() == level_blocks);
  REQUIRE(j["final_slots"].size() == p.final_sequences);

  // Every packed block decodes back to the in-memory slot array.
  for (const auto& b : j["level_slots"]) {
    const std::uint32_t level = b["level"].get<std::uint32_t>();
    const std::uint32_t rep = b["repetition"].get<std::uint32_t>();
    const auto slots = unpack_slots_base64(b["slots"].get<std::string>());
    CHECK(slots == a.level_block_slots(level, rep));
    CHECK(slots.size() == (std::size_t{1} << level));
  }
  for (const auto& b : j["final_slots"]) {
    const std::uint32_t seq = b["sequence"].get<std::uint32_t>();
    const auto slots = unpack_slots_base64(b["slots"].get<std::string>());
    CHECK(slots == a.final_sequence_slots(seq));
    CHECK(slots.size() == p.n);
  }
}

TEST_CASE("design dumps are byte-identical for identical flags") {
  const ProblemParams p = make_params(256, 8, 8, 2, 1, 12345);
  const std::string d1 = design_to_json(ExplicitAssignment(p)).dump(2);
  const std::string d2 = design_to_json(ExplicitAssignment(p)).dump(2);
  CHECK(d1 == d2);

  ProblemParams other = p;
  other.seed = 12346;
  CHECK(design_to_json(ExplicitAssignment(other)).dump(2) != d1);

  const std::string h1 = design_to_json(HashAssignment(p, 5)).dump(2);
  const std::string h2 = design_to_json(HashAssignment(p, 5)).dump(2);
  CHECK(h1 == h2);
  CHECK(design_to_json(HashAssignment(other, 5)).dump(2) != h1);
}

TEST_CASE("hashed design dump describes reconstructible hash functions") {
  const ProblemParams p = make_params(64, 4, 4, 1, 2, 77);
  const HashAssignment a(p, 4);
  const ordered_json j = design_to_json(a);

  CHECK(j["variant"] == "hashed");
  CHECK(j["r"] == 4);
  REQUIRE(j["level_hashes"].size() == p.split_levels() * p.Ctil);
  REQUIRE(j["final_hashes"].size() == p.final_sequences);

  for (const auto& b : j["level_hashes"]) {
    const std::uint32_t level = b["level"].get<std::uint32_t>();
    const std::uint32_t rep = b["repetition"].get<std::uint32_t>();
    const auto& hj = b["hash"];
    const std::uint32_t m = hj["m"].get<std::uint32_t>();
    // C*k = 16 needs 4 output bits; the field must cover both the nodes at
    // this level and the output range.
    CHECK(m == std::max<std::uint32_t>(level, 4));
    CHECK(hj["out_bits"] == 4);
    REQUIRE(hj["coeffs"].size() == 4);
    const std::uint64_t modulus =
        std::stoull(hj["modulus"].get<std::string>(), nullptr, 16);
    CHECK(modulus == gf2m_modulus_for_degree(m));

    // Rebuild the hash from the dump and compare evaluations.
    std::vector<std::uint64_t> coeffs;
    for (const auto& c : hj["coeffs"])
      coeffs.push_back(std::stoull(c.get<std::string>(), nullptr, 16));
    const PolyHash rebuilt(Gf2mField(m, modulus), coeffs, 4);
    const PolyHash& original = a.level_hash(level, rep);
    for (std::uint64_t node = 0; node < (std::uint64_t{1} << level); ++node)
      CHECK(rebuilt(node) == original(node));
  }

  for (const auto& b : j["final_hashes"]) {
    const auto& hj = b["hash"];
    CHECK(hj["m"] == p.ell_max);  // covers all n items
    CHECK(hj["out_bits"] == 3);   // 2k = 8 targets
  }
}

TEST_CASE("decode result serializes its instrumentation") {
  DecodeResult r;
  r.estimate = {3, 11};
  r.pd_per_level = {2, 4, 3, 2};
  r.nodes_visited = 9;
  r.n_leaf_pd = 2;
  r.decode_ns = 1234;
  const ordered_json j = decode_result_to_json(r);
  CHECK(j["estimate"] == ordered_json::array({3, 11}));
  CHECK(j["pd_per_level"].size() == 4);
  CHECK(j["nodes_visited"] == 9);
  CHECK(j["n_leaf_pd"] == 2);
  CHECK(j["decode_ns"] == 1234);
}

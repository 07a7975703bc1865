#include <doctest.h>

#include <array>
#include <stdexcept>
#include <vector>

#include "splitpool/gf2m.hpp"
#include "splitpool/prng.hpp"

using namespace splitpool;

namespace {

// Reduction oracle: schoolbook carryless multiply followed by long division.
std::uint64_t mul_via_long_division(const Gf2mField& f, std::uint64_t a,
                                    std::uint64_t b) {
  return poly_mod(poly_mul_nomod(a & f.mask(), b & f.mask()), f.modulus());
}

}  // namespace

TEST_CASE("polynomial helpers") {
  CHECK(poly_degree(0b1) == 0);
  CHECK(poly_degree(0b1011) == 3);
  CHECK(poly_mul_nomod(0b11, 0b11) == 0b101);  // (x+1)^2 = x^2+1 over GF(2)
  CHECK(poly_mod(0b101, 0b11) == 0);           // x^2+1 = (x+1)^2
  CHECK(poly_mod(0b1000, 0b1011) == 0b011);    // x^3 mod (x^3+x+1) = x+1
}

TEST_CASE("irreducibility check agrees with hand-factored small cases") {
  CHECK(gf2m_is_irreducible(0b10));      // x
  CHECK(gf2m_is_irreducible(0b11));      // x+1
  CHECK(gf2m_is_irreducible(0b111));     // x^2+x+1
  CHECK_FALSE(gf2m_is_irreducible(0b101));   // (x+1)^2
  CHECK_FALSE(gf2m_is_irreducible(0b110));   // x(x+1)
  CHECK(gf2m_is_irreducible(0b1011));    // x^3+x+1
  CHECK(gf2m_is_irreducible(0b1101));    // x^3+x^2+1
  CHECK_FALSE(gf2m_is_irreducible(0b1111));  // (x+1)(x^2+x+1)
  CHECK(gf2m_is_irreducible(0x11b));     // degree-8, no factor of degree <= 4
  CHECK_FALSE(gf2m_is_irreducible(0x11c));
}

TEST_CASE("shipped modulus table is irreducible at every degree") {
  for (std::uint32_t m = 1; m <= Gf2mField::kMaxDegree; ++m) {
    const std::uint64_t mod = gf2m_modulus_for_degree(m);
    CAPTURE(m);
    CHECK(poly_degree(mod) == m);
    CHECK(gf2m_is_irreducible(mod));
  }
  CHECK(gf2m_modulus_for_degree(3) == 0b1011);
  CHECK(gf2m_modulus_for_degree(8) == 0x11b);
  CHECK_THROWS_AS(gf2m_modulus_for_degree(0), std::invalid_argument);
  CHECK_THROWS_AS(gf2m_modulus_for_degree(33), std::invalid_argument);
}

TEST_CASE("field multiplication at pinned values") {
  const Gf2mField f3(3);
  CHECK(f3.modulus() == 0b1011);
  CHECK(f3.mul(0b010, 0b010) == 0b100);  // x*x = x^2, no reduction
  CHECK(f3.mul(0b100, 0b010) == 0b011);  // x^2*x = x^3 = x+1
  const Gf2mField f1(1);
  CHECK(f1.mul(1, 1) == 1);

  // The widest field: products must reduce back into 32 bits.
  const Gf2mField f32(32);
  const std::uint64_t v = f32.mul(0xdeadbeef, 0x12345678);
  CHECK(v <= f32.mask());
  CHECK(v == mul_via_long_division(f32, 0xdeadbeef, 0x12345678));
}

TEST_CASE("field multiplication matches the long-division oracle") {
  for (std::uint32_t m : {2u, 3u, 5u, 8u, 13u, 16u, 21u, 32u}) {
    const Gf2mField f(m);
    SplitMix64 g(1000 + m);
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t a = g.next_bits(m);
      const std::uint64_t b = g.next_bits(m);
      CAPTURE(m);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(f.mul(a, b) == mul_via_long_division(f, a, b));
    }
  }
}

TEST_CASE("field axioms on sampled triples, exhaustive inverses for GF(8)") {
  for (std::uint32_t m : {3u, 8u}) {
    const Gf2mField f(m);
    SplitMix64 g(77 + m);
    for (int i = 0; i < 300; ++i) {
      const std::uint64_t a = g.next_bits(m);
      const std::uint64_t b = g.next_bits(m);
      const std::uint64_t c = g.next_bits(m);
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, b ^ c) == (f.mul(a, b) ^ f.mul(a, c)));
      CHECK(f.mul(a, 1) == a);
      CHECK(f.mul(a, 0) == 0);
    }
  }
  // Every nonzero element of GF(2^3) has a multiplicative inverse.
  const Gf2mField f(3);
  for (std::uint64_t a = 1; a < 8; ++a) {
    bool found = false;
    for (std::uint64_t b = 1; b < 8; ++b)
      if (f.mul(a, b) == 1) found = true;
    CHECK(found);
  }
}

TEST_CASE("field rejects mismatched and reducible custom moduli") {
  CHECK_THROWS_AS(Gf2mField(0), std::invalid_argument);
  CHECK_THROWS_AS(Gf2mField(33), std::invalid_argument);
  CHECK_THROWS_AS(Gf2mField(3, 0b101), std::invalid_argument);  // degree 2
  // A reducible modulus of the right degree is accepted by the constructor
  // (only the shipped table promises irreducibility) but breaks inverses;
  // the table test above is the guard that matters.
  const Gf2mField broken(4, 0b11111);
  CHECK(broken.degree() == 4);
}

TEST_CASE("hash evaluation at pinned values") {
  const Gf2mField f(3);
  const PolyHash h(f, {0b001, 0b010}, 3);
  // c0 + c1*x at x = x: 1 + x*x = x^2 + 1 = 0b101.
  CHECK(h(0b010) == 0b101);
  CHECK(h.r() == 2);

  const PolyHash zero(f, {0, 0, 0}, 3);
  for (std::uint64_t x = 0; x < 8; ++x) CHECK(zero(x) == 0);

  const PolyHash constant(f, {0b110}, 2);
  for (std::uint64_t x = 0; x < 8; ++x) CHECK(constant(x) == 0b10);

  std::uint64_t muls = 0;
  const PolyHash h5(f, {1, 2, 3, 4, 5}, 3);
  h5.eval_counted(0b011, &muls);
  CHECK(muls == 4);  // r-1 multiplications per evaluation
}

TEST_CASE("hash evaluation agrees with direct power-sum evaluation") {
  const Gf2mField f(8);
  SplitMix64 g(5);
  const PolyHash h = PolyHash::draw(f, 4, 8, g);
  for (std::uint64_t x = 0; x < 256; x += 7) {
    // sum_i c_i * x^i computed without Horner.
    std::uint64_t direct = 0;
    std::uint64_t xp = 1;
    for (std::uint32_t i = 0; i < h.r(); ++i) {
      direct ^= f.mul(h.coeffs()[i], xp);
      xp = f.mul(xp, x);
    }
    CHECK(h(x) == direct);
  }
}

TEST_CASE("hash drawing is deterministic and validates parameters") {
  const Gf2mField f(6);
  SplitMix64 g1(42), g2(42);
  const PolyHash a = PolyHash::draw(f, 3, 4, g1);
  const PolyHash b = PolyHash::draw(f, 3, 4, g2);
  CHECK(a.coeffs() == b.coeffs());
  CHECK(a.storage_bits() == 3 * 6);

  SplitMix64 g3(43);
  const PolyHash c = PolyHash::draw(f, 3, 4, g3);
  CHECK(a.coeffs() != c.coeffs());

  CHECK_THROWS_AS(PolyHash(f, {}, 3), std::invalid_argument);
  CHECK_THROWS_AS(PolyHash(f, {1}, 0), std::invalid_argument);
  CHECK_THROWS_AS(PolyHash(f, {1}, 7), std::invalid_argument);
}

TEST_CASE("hash coefficient draws look uniform (chi-square)") {
  const Gf2mField f(8);
  SplitMix64 g(202);
  std::array<std::uint64_t, 256> counts{};
  const int draws = 100000;
  for (int i = 0; i < draws / 4; ++i) {
    const PolyHash h = PolyHash::draw(f, 4, 8, g);
    for (std::uint64_t c : h.coeffs()) ++counts[c];
  }
  const double expected = draws / 256.0;
  double chi2 = 0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    chi2 += d * d / expected;
  }
  // 255 degrees of freedom: mean 255, sd ~22.6; 350 is a ~4-sigma ceiling.
  CHECK(chi2 < 350.0);
  CHECK(chi2 > 120.0);  // suspiciously uniform would be a bug too
}

TEST_CASE("exhaustive r-wise independence") {
  {
    const std::array<std::uint64_t, 3> pts{1, 2, 3};
    const RwiseReport rep = verify_rwise(3, pts, 3);
    CHECK(rep.polynomials == 512);
    CHECK(rep.tuples == 512);
    CHECK(rep.expected_multiplicity == 1);
    CHECK(rep.exact);
  }
  {
    const std::array<std::uint64_t, 2> pts{1, 2};
    const RwiseReport rep = verify_rwise(3, pts, 1);
    CHECK(rep.polynomials == 64);
    CHECK(rep.tuples == 4);
    CHECK(rep.expected_multiplicity == 16);
    CHECK(rep.exact);
  }
  {
    const std::array<std::uint64_t, 2> pts{5, 9};
    const RwiseReport rep = verify_rwise(4, pts, 4);
    CHECK(rep.expected_multiplicity == 1);
    CHECK(rep.exact);
  }
  {
    // r = 1: a single evaluation is uniform over the field.
    const std::array<std::uint64_t, 1> pts{6};
    const RwiseReport rep = verify_rwise(3, pts, 3);
    CHECK(rep.exact);
  }
  {
    const std::array<std::uint64_t, 2> dup{3, 3};
    CHECK_THROWS_AS(verify_rwise(3, dup, 3), std::invalid_argument);
    const std::array<std::uint64_t, 2> oob{1, 9};
    CHECK_THROWS_AS(verify_rwise(3, oob, 3), std::invalid_argument);
    const std::array<std::uint64_t, 4> big{1, 2, 3, 4};
    CHECK_THROWS_AS(verify_rwise(8, big, 8), std::invalid_argument);
  }
}

TEST_CASE("truncation would break without distinct-point embedding") {
  // Not a library behaviour test: documents why out_bits <= m matters.
  // With out_bits = m the full-width tuples are exactly uniform; truncating
  // to b bits partitions them into equal classes, so multiplicity scales by
  // 2^((m-b)*r) exactly — checked at (m=4, r=2, b=2).
  const std::array<std::uint64_t, 2> pts{1, 2};
  const RwiseReport rep = verify_rwise(4, pts, 2);
  CHECK(rep.expected_multiplicity == 16);
  CHECK(rep.exact);
}

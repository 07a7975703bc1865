#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "splitpool/prng.hpp"

namespace splitpool {

// GF(2^m) for 1 <= m <= 32 with a fixed minimal-weight irreducible modulus
// per degree (shipped table, re-verified by the brute-force check below).
// Elements are m-bit integers; addition is XOR.
class Gf2mField {
 public:
  static constexpr std::uint32_t kMaxDegree = 32;

  // Field with the shipped modulus for degree m.
  explicit Gf2mField(std::uint32_t m);
  // Field with a caller-supplied modulus (degree-m bit included). Used by
  // tests to cross-check reduction against long division.
  Gf2mField(std::uint32_t m, std::uint64_t modulus);

  std::uint32_t degree() const { return m_; }
  // Modulus bitmask including the x^m term (so m=3 -> 0b1011).
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t order() const { return std::uint64_t{1} << m_; }
  std::uint64_t mask() const { return order() - 1; }

  // Carryless shift-and-XOR product reduced modulo the field modulus.
  // Inputs are masked to m bits.
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    a &= mask();
    b &= mask();
    const std::uint64_t top = order();
    std::uint64_t r = 0;
    while (b != 0) {
      if (b & 1) r ^= a;
      b >>= 1;
      a <<= 1;
      if (a & top) a ^= modulus_;
    }
    return r;
  }

  friend bool operator==(const Gf2mField&, const Gf2mField&) = default;

 private:
  std::uint32_t m_;
  std::uint64_t modulus_;
};

// Plain polynomial-over-GF(2) helpers used by the irreducibility check and
// by tests as a reduction oracle.
std::uint32_t poly_degree(std::uint64_t poly);  // degree of nonzero poly
// Carryless (unreduced) product of two GF(2)[x] polynomials of degree <= 31.
std::uint64_t poly_mul_nomod(std::uint64_t a, std::uint64_t b);
// Remainder of a modulo b over GF(2)[x], b != 0.
std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b);

// Brute-force irreducibility over GF(2): scans every candidate divisor of
// degree 1 .. deg(poly)/2. Exponential in the degree but instant for the
// degrees shipped here; used to re-verify the modulus table, not in hot paths.
bool gf2m_is_irreducible(std::uint64_t poly);

// Shipped modulus (including the x^m bit) for degree m in [1, 32].
std::uint64_t gf2m_modulus_for_degree(std::uint32_t m);

// Wegman-Carter polynomial hash: r uniform coefficients define a degree-(r-1)
// polynomial over the field; evaluation is Horner's rule (r-1 field
// multiplications), then truncation to the low out_bits bits. Evaluations at
// any r distinct points are jointly uniform (the coefficient-to-value map is
// a bijection), and truncation of jointly uniform values stays jointly
// uniform, so the family is exactly r-wise independent.
class PolyHash {
 public:
  PolyHash(const Gf2mField& field, std::vector<std::uint64_t> coeffs,
           std::uint32_t out_bits);

  // Draws r coefficients from the stream. Deterministic given the stream.
  static PolyHash draw(const Gf2mField& field, std::uint32_t r,
                       std::uint32_t out_bits, SplitMix64& stream);

  // coeffs[0] + coeffs[1]*x + ... + coeffs[r-1]*x^(r-1), low out_bits bits.
  std::uint64_t operator()(std::uint64_t x) const {
    std::uint64_t acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;)
      acc = field_.mul(acc, x) ^ coeffs_[i];
    return acc & out_mask_;
  }

  // Same evaluation, counting field multiplications into *muls.
  std::uint64_t eval_counted(std::uint64_t x, std::uint64_t* muls) const;

  const Gf2mField& field() const { return field_; }
  std::uint32_t r() const { return static_cast<std::uint32_t>(coeffs_.size()); }
  std::uint32_t out_bits() const { return out_bits_; }
  const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
  // r coefficients of m bits each; the dominant storage term.
  std::uint64_t storage_bits() const { return std::uint64_t{r()} * field_.degree(); }

 private:
  Gf2mField field_;
  std::vector<std::uint64_t> coeffs_;
  std::uint32_t out_bits_;
  std::uint64_t out_mask_;
};

// Exhaustive r-wise independence verification: enumerate all 2^(m*r)
// coefficient vectors, evaluate at the given r distinct points, and count
// every output tuple. Exact uniformity means each truncated tuple occurs
// exactly 2^((m-out_bits)*r) times.
struct RwiseReport {
  std::uint32_t m = 0;
  std::uint32_t r = 0;
  std::uint32_t out_bits = 0;
  std::uint64_t polynomials = 0;           // 2^(m*r)
  std::uint64_t tuples = 0;                // 2^(out_bits*r)
  std::uint64_t expected_multiplicity = 0; // polynomials / tuples
  std::uint64_t min_count = 0;
  std::uint64_t max_count = 0;
  bool exact = false;
};

RwiseReport verify_rwise(std::uint32_t m, std::span<const std::uint64_t> points,
                         std::uint32_t out_bits);

}  // namespace splitpool

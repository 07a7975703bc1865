#include "splitpool/gf2m.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace splitpool {

namespace {

// Minimal-weight irreducible polynomial per degree m = 1..32, lowest value
// among the minimal-weight candidates. Index m-1; bitmask includes the x^m
// term. Every entry passes gf2m_is_irreducible (re-checked in tests and by
// `verify --check moduli`).
constexpr std::uint64_t kModulusTable[Gf2mField::kMaxDegree] = {
    0x3,         // m=1:  x + 1
    0x7,         // m=2:  x^2 + x + 1
    0xb,         // m=3:  x^3 + x + 1
    0x13,        // m=4:  x^4 + x + 1
    0x25,        // m=5:  x^5 + x^2 + 1
    0x43,        // m=6:  x^6 + x + 1
    0x83,        // m=7:  x^7 + x + 1
    0x11b,       // m=8:  x^8 + x^4 + x^3 + x + 1
    0x203,       // m=9:  x^9 + x + 1
    0x409,       // m=10: x^10 + x^3 + 1
    0x805,       // m=11: x^11 + x^2 + 1
    0x1009,      // m=12: x^12 + x^3 + 1
    0x201b,      // m=13: x^13 + x^4 + x^3 + x + 1
    0x4021,      // m=14: x^14 + x^5 + 1
    0x8003,      // m=15: x^15 + x + 1
    0x1002b,     // m=16: x^16 + x^5 + x^3 + x + 1
    0x20009,     // m=17: x^17 + x^3 + 1
    0x40009,     // m=18: x^18 + x^3 + 1
    0x80027,     // m=19: x^19 + x^5 + x^2 + x + 1
    0x100009,    // m=20: x^20 + x^3 + 1
    0x200005,    // m=21: x^21 + x^2 + 1
    0x400003,    // m=22: x^22 + x + 1
    0x800021,    // m=23: x^23 + x^5 + 1
    0x100001b,   // m=24: x^24 + x^4 + x^3 + x + 1
    0x2000009,   // m=25: x^25 + x^3 + 1
    0x400001b,   // m=26: x^26 + x^4 + x^3 + x + 1
    0x8000027,   // m=27: x^27 + x^5 + x^2 + x + 1
    0x10000003,  // m=28: x^28 + x + 1
    0x20000005,  // m=29: x^29 + x^2 + 1
    0x40000003,  // m=30: x^30 + x + 1
    0x80000009,  // m=31: x^31 + x^3 + 1
    0x10000008d  // m=32: x^32 + x^7 + x^3 + x^2 + 1
};

}  // namespace

std::uint64_t gf2m_modulus_for_degree(std::uint32_t m) {
  if (m < 1 || m > Gf2mField::kMaxDegree)
    throw std::invalid_argument("field degree must be in [1, 32]");
  return kModulusTable[m - 1];
}

Gf2mField::Gf2mField(std::uint32_t m)
    : Gf2mField(m, gf2m_modulus_for_degree(m)) {}

Gf2mField::Gf2mField(std::uint32_t m, std::uint64_t modulus)
    : m_(m), modulus_(modulus) {
  if (m < 1 || m > kMaxDegree)
    throw std::invalid_argument("field degree must be in [1, 32]");
  if (modulus == 0 || poly_degree(modulus) != m)
    throw std::invalid_argument("modulus degree does not match field degree");
}

std::uint32_t poly_degree(std::uint64_t poly) {
  if (poly == 0) throw std::invalid_argument("zero polynomial has no degree");
  return static_cast<std::uint32_t>(63 - std::countl_zero(poly));
}

std::uint64_t poly_mul_nomod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b != 0) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
  }
  return r;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  if (b == 0) throw std::invalid_argument("division by zero polynomial");
  const std::uint32_t db = poly_degree(b);
  while (a != 0) {
    std::uint32_t da = poly_degree(a);
    if (da < db) break;
    a ^= b << (da - db);
  }
  return a;
}

bool gf2m_is_irreducible(std::uint64_t poly) {
  if (poly < 2) return false;  // constants
  const std::uint32_t deg = poly_degree(poly);
  if (deg == 1) return true;
  if ((poly & 1) == 0) return false;  // divisible by x
  // Try every polynomial of degree 1 .. deg/2 as a divisor.
  for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
    const std::uint64_t lo = std::uint64_t{1} << d;
    const std::uint64_t hi = std::uint64_t{1} << (d + 1);
    for (std::uint64_t cand = lo; cand < hi; ++cand) {
      if (poly_mod(poly, cand) == 0) return false;
    }
  }
  return true;
}

PolyHash::PolyHash(const Gf2mField& field, std::vector<std::uint64_t> coeffs,
                   std::uint32_t out_bits)
    : field_(field), coeffs_(std::move(coeffs)), out_bits_(out_bits) {
  if (coeffs_.empty()) throw std::invalid_argument("hash needs r >= 1 coefficients");
  if (out_bits < 1 || out_bits > field_.degree())
    throw std::invalid_argument("out_bits must be in [1, m]");
  for (std::uint64_t& c : coeffs_) c &= field_.mask();
  out_mask_ = (out_bits >= 64) ? ~std::uint64_t{0}
                               : (std::uint64_t{1} << out_bits) - 1;
}

PolyHash PolyHash::draw(const Gf2mField& field, std::uint32_t r,
                        std::uint32_t out_bits, SplitMix64& stream) {
  if (r < 1) throw std::invalid_argument("hash needs r >= 1 coefficients");
  std::vector<std::uint64_t> coeffs(r);
  for (auto& c : coeffs) c = stream.next_bits(field.degree());
  return PolyHash(field, std::move(coeffs), out_bits);
}

std::uint64_t PolyHash::eval_counted(std::uint64_t x, std::uint64_t* muls) const {
  std::uint64_t acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
    acc = field_.mul(acc, x) ^ coeffs_[i];
    ++*muls;
  }
  return acc & out_mask_;
}

RwiseReport verify_rwise(std::uint32_t m, std::span<const std::uint64_t> points,
                         std::uint32_t out_bits) {
  const std::uint32_t r = static_cast<std::uint32_t>(points.size());
  if (r < 1) throw std::invalid_argument("need at least one evaluation point");
  if (out_bits < 1 || out_bits > m)
    throw std::invalid_argument("out_bits must be in [1, m]");
  if (std::uint64_t{m} * r > 26 || std::uint64_t{out_bits} * r > 26)
    throw std::invalid_argument("enumeration too large (m*r capped at 26)");
  {
    std::unordered_set<std::uint64_t> uniq(points.begin(), points.end());
    if (uniq.size() != points.size())
      throw std::invalid_argument("evaluation points must be distinct");
    for (std::uint64_t p : points)
      if (p >> m) throw std::invalid_argument("evaluation point outside field");
  }

  const Gf2mField field(m);
  RwiseReport rep;
  rep.m = m;
  rep.r = r;
  rep.out_bits = out_bits;
  rep.polynomials = std::uint64_t{1} << (m * r);
  rep.tuples = std::uint64_t{1} << (out_bits * r);
  rep.expected_multiplicity = rep.polynomials / rep.tuples;

  std::vector<std::uint64_t> counts(rep.tuples, 0);
  std::vector<std::uint64_t> coeffs(r);
  const std::uint64_t elem_mask = field.mask();
  for (std::uint64_t code = 0; code < rep.polynomials; ++code) {
    for (std::uint32_t i = 0; i < r; ++i)
      coeffs[i] = (code >> (m * i)) & elem_mask;
    std::uint64_t tuple = 0;
    for (std::uint32_t i = 0; i < r; ++i) {
      // Horner evaluation of the coefficient vector at points[i].
      std::uint64_t acc = coeffs[r - 1];
      for (std::uint32_t j = r - 1; j-- > 0;)
        acc = field.mul(acc, points[i]) ^ coeffs[j];
      tuple |= (acc & ((std::uint64_t{1} << out_bits) - 1)) << (out_bits * i);
    }
    ++counts[tuple];
  }

  rep.min_count = counts[0];
  rep.max_count = counts[0];
  for (std::uint64_t c : counts) {
    if (c < rep.min_count) rep.min_count = c;
    if (c > rep.max_count) rep.max_count = c;
  }
  rep.exact = rep.min_count == rep.expected_multiplicity &&
              rep.max_count == rep.expected_multiplicity;
  return rep;
}

}  // namespace splitpool

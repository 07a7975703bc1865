#include "splitpool/saffron.hpp"

#include <algorithm>
#include <stdexcept>

#include "splitpool/params.hpp"

namespace splitpool {

SaffronDesign make_saffron(std::uint64_t n, std::uint64_t k, std::uint32_t cb,
                           std::uint64_t seed) {
  if (n < 2 || !is_pow2(n))
    throw std::invalid_argument("n must be a power of two, at least 2");
  if (k < 1 || !is_pow2(k) || k > n)
    throw std::invalid_argument("k must be a power of two in [1, n]");
  if (cb < 1) throw std::invalid_argument("cb must be at least 1");

  SaffronDesign d;
  d.n = n;
  d.k = k;
  d.cb = cb;
  d.seed = seed;
  d.item_bits = log2_exact(n);
  const std::uint32_t logk = log2_exact(k);
  d.bundles = std::uint64_t{cb} * k * (logk > 1 ? logk : 1);
  return d;
}

std::array<std::uint64_t, 2> saffron_encode(
    std::span<const std::uint64_t> members, std::uint32_t item_bits) {
  const std::uint64_t mask = (item_bits >= 64)
                                 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << item_bits) - 1;
  std::array<std::uint64_t, 2> words{0, 0};
  for (std::uint64_t item : members) {
    words[0] |= item;
    words[1] |= ~item & mask;
  }
  return words;
}

SaffronOutcomes saffron_simulate(const SaffronDesign& d,
                                 std::span<const std::uint64_t> defectives) {
  for (std::uint64_t item : defectives)
    if (item >= d.n)
      throw std::invalid_argument("defective item out of range");
  SaffronOutcomes y;
  y.bundle_words.resize(d.bundles, {0, 0});
  std::vector<std::uint64_t> members;
  for (std::uint64_t b = 0; b < d.bundles; ++b) {
    members.clear();
    for (std::uint64_t item : defectives)
      if (d.includes(b, item)) members.push_back(item);
    y.bundle_words[b] = saffron_encode(members, d.item_bits);
  }
  return y;
}

std::vector<std::uint64_t> saffron_decode(const SaffronDesign& d,
                                          const SaffronOutcomes& y) {
  const std::uint64_t mask = (std::uint64_t{1} << d.item_bits) - 1;
  std::vector<std::uint64_t> found;
  for (const auto& words : y.bundle_words) {
    if (words[0] != (~words[1] & mask)) continue;
    found.push_back(words[0]);
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

bool saffron_all_isolated(const SaffronDesign& d,
                          std::span<const std::uint64_t> defectives) {
  std::vector<bool> isolated(defectives.size(), false);
  for (std::uint64_t b = 0; b < d.bundles; ++b) {
    std::size_t count = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < defectives.size(); ++i) {
      if (d.includes(b, defectives[i])) {
        ++count;
        last = i;
      }
    }
    if (count == 1) isolated[last] = true;
  }
  for (bool b : isolated)
    if (!b) return false;
  return true;
}

}  // namespace splitpool

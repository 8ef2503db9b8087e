#include <cmath>
#include <limits>

#include "qdyn/density/density.hpp"
#include "qdyn/error.hpp"
#include "qdyn/exactnum/arith.hpp"

namespace qdyn {

namespace {

constexpr std::uint64_t kSegmentOdds = 1u << 15;

}  // namespace

void for_each_prime(std::uint64_t X, const std::function<void(std::uint32_t)>& visit) {
  if (X > std::numeric_limits<std::uint32_t>::max()) throw unsupported_size("prime_sieve: bound above 2^32");
  if (X < 2) return;
  visit(2);
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(X)));
  while (root * root > X) --root;
  while ((root + 1) * (root + 1) <= X) ++root;
  const auto base = small_primes(static_cast<std::uint32_t>(root + 1));

  // Bit i of a segment stands for the odd number lo + 2i.
  std::vector<std::uint8_t> composite(kSegmentOdds);
  for (std::uint64_t lo = 3; lo <= X; lo += 2 * kSegmentOdds) {
    const std::uint64_t hi = std::min<std::uint64_t>(X, lo + 2 * kSegmentOdds - 1);
    const std::uint64_t count = (hi - lo) / 2 + 1;
    std::fill(composite.begin(), composite.begin() + static_cast<std::ptrdiff_t>(count), 0);
    for (const std::uint32_t q : base) {
      if (q == 2) continue;
      const std::uint64_t qq = std::uint64_t{q} * q;
      if (qq > hi) break;
      std::uint64_t first = std::max(qq, (lo + q - 1) / q * q);
      if (first % 2 == 0) first += q;
      for (std::uint64_t m = first; m <= hi; m += 2 * q) composite[(m - lo) / 2] = 1;
    }
    for (std::uint64_t i = 0; i < count; ++i) {
      if (composite[i] == 0) visit(static_cast<std::uint32_t>(lo + 2 * i));
    }
  }
}

std::vector<std::uint32_t> prime_sieve(std::uint64_t X) {
  std::vector<std::uint32_t> out;
  for_each_prime(X, [&](std::uint32_t p) { out.push_back(p); });
  return out;
}

}  // namespace qdyn

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "qdyn/density/density.hpp"
#include "qdyn/error.hpp"
#include "qdyn/exactnum/arith.hpp"
#include "qdyn/polydyn/mod_poly.hpp"

namespace qdyn {

int max_preimage_depth(const QuadMap& f, const IntPoly& g, unsigned N, std::uint64_t p) {
  if (p % 2 == 0) throw std::invalid_argument("preimage search: p must be odd");
  if (N > kMaxPreimageDepth) throw unsupported_size("preimage search: depth above 20");

  std::vector<std::uint64_t> level;
  const auto gp = modp::reduce(g, p);
  if (std::all_of(gp.begin(), gp.end(), [](std::uint64_t c) { return c == 0; })) return static_cast<int>(N);
  level = modp::roots(gp, p);
  if (level.empty()) return -1;

  // x^2 + b x + c = y  <=>  (x + h)^2 = y + h^2 - c with h = b / 2.
  const std::uint64_t h = mul_mod(mod_u64(f.b, p), inv_mod(2, p), p);
  const std::uint64_t shift = (mul_mod(h, h, p) + p - mod_u64(f.c, p)) % p;
  const std::uint64_t neg_h = (p - h) % p;
  for (unsigned depth = 1; depth <= N; ++depth) {
    std::vector<std::uint64_t> next;
    for (const std::uint64_t y : level) {
      const std::uint64_t d = (y + shift) % p;
      if (d == 0) {
        next.push_back(neg_h);
        continue;
      }
      const auto s = sqrt_mod(d, p);
      if (!s) continue;
      next.push_back((*s + neg_h) % p);
      next.push_back((p - *s + neg_h) % p);
    }
    if (next.empty()) return static_cast<int>(depth) - 1;
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  return static_cast<int>(N);
}

bool preimage_exists_mod_p(const QuadMap& f, const IntPoly& g, unsigned n, std::uint64_t p) {
  return max_preimage_depth(f, g, n, p) >= static_cast<int>(n);
}

std::vector<std::pair<unsigned, double>> chebotarev_upper_bound(const QuadMap& f, const IntPoly& g, unsigned N,
                                                                std::uint64_t X, unsigned threads) {
  if (N < 1) throw std::invalid_argument("chebotarev_upper_bound: N must be >= 1");
  if (N > kMaxPreimageDepth) throw unsupported_size("chebotarev_upper_bound: depth above 20");
  auto primes = prime_sieve(X);
  if (!primes.empty() && primes.front() == 2) primes.erase(primes.begin());

  threads = std::max(1u, threads);
  std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(N + 1, 0));
  const auto work = [&](unsigned t) {
    // Strided split; every worker writes only its own counters.
    for (std::size_t i = t; i < primes.size(); i += threads) {
      const int d = max_preimage_depth(f, g, N, primes[i]);
      for (int k = 1; k <= d; ++k) ++counts[t][static_cast<std::size_t>(k)];
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  std::vector<std::pair<unsigned, double>> out;
  for (unsigned n = 1; n <= N; ++n) {
    std::uint64_t c = 0;
    for (const auto& per : counts) c += per[n];
    const double frac = primes.empty() ? 0.0 : static_cast<double>(c) / static_cast<double>(primes.size());
    out.emplace_back(n, frac);
  }
  return out;
}

}  // namespace qdyn

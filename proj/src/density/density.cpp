#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "qdyn/density/density.hpp"
#include "qdyn/exactnum/arith.hpp"
#include "qdyn/simd/orbit_kernel.hpp"

namespace qdyn {

namespace {

constexpr std::size_t kChunk = 2048;

// Runs job(chunk_index) for every chunk over a small pool; each chunk writes
// only its own slot, so results do not depend on scheduling.
void run_chunks(std::size_t chunks, unsigned threads, const std::function<void(std::size_t)>& job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < chunks; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < chunks; i = next++) job(i);
    });
  }
  for (auto& th : pool) th.join();
}

void fill_coeffs(std::vector<std::uint32_t>& dst, std::size_t lanes, std::size_t lane, const IntPoly& h,
                 std::uint64_t p) {
  for (std::size_t i = 0; i < h.coeffs().size(); ++i) {
    dst[i * lanes + lane] = static_cast<std::uint32_t>(mod_u64(h.coeffs()[i], p));
  }
}

bool bijective_mod(const IntPoly& f, std::uint64_t p) { return f.degree() == 1 && mod_u64(f.coeff(1), p) != 0; }

}  // namespace

DensityReport density_estimate(const IntPoly& f, const mpz_class& a0, std::uint64_t X, const IntPoly& g,
                               const DensityOptions& options) {
  if (X < 2) throw std::invalid_argument("density_estimate: X must be >= 2");
  const IntegerOrbit orbit = integer_orbit(f, a0, g);
  const auto primes = prime_sieve(X);

  // Nonzero g(a_n) over the exact prefix, with their indices.
  std::vector<std::pair<std::size_t, mpz_class>> prefix;
  for (std::size_t n = 0; n < orbit.values.size(); ++n) {
    mpz_class gv = g.evaluate(orbit.values[n]);
    if (gv != 0) prefix.emplace_back(n, std::move(gv));
  }
  const std::size_t K = orbit.values.size();
  const bool plain_g = g == IntPoly::identity();
  const mpz_class& kernel_start = orbit.finite ? a0 : orbit.tail_start;

  const std::size_t chunks = (primes.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<PrimeRow>> rows(chunks);
  run_chunks(chunks, options.threads, [&](std::size_t ci) {
    const std::size_t lo = ci * kChunk;
    const std::size_t hi = std::min(primes.size(), lo + kChunk);
    auto& out = rows[ci];
    out.reserve(hi - lo);
    std::vector<std::size_t> lane_of(hi - lo, SIZE_MAX);
    std::vector<std::size_t> need;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint32_t p = primes[i];
      PrimeRow row{p, false, -1, 0};
      for (const auto& [n, gv] : prefix) {
        if (mpz_divisible_ui_p(gv.get_mpz_t(), p) != 0) {
          row.member = true;
          row.steps = static_cast<std::int64_t>(n);
          break;
        }
      }
      if (options.per_prime || (!orbit.finite && !row.member)) {
        lane_of[i - lo] = need.size();
        need.push_back(i);
      }
      out.push_back(row);
    }

    simd::OrbitLanes lanes;
    lanes.resize(need.size(), static_cast<unsigned>(f.degree() + 1), plain_g ? 0u : static_cast<unsigned>(g.degree() + 1));
    lanes.stop_at_first_hit = !options.per_prime;
    for (std::size_t j = 0; j < need.size(); ++j) {
      const std::uint32_t p = primes[need[j]];
      lanes.modulus[j] = p;
      lanes.start[j] = static_cast<std::uint32_t>(mod_u64(kernel_start, p));
      fill_coeffs(lanes.f_coeffs, lanes.lanes, j, f, p);
      if (!plain_g) fill_coeffs(lanes.g_coeffs, lanes.lanes, j, g, p);
      lanes.purely_periodic[j] = bijective_mod(f, p) ? 1 : 0;
    }
    std::vector<simd::OrbitWalk> walks;
    simd::walk_orbits(lanes, walks);

    for (std::size_t k = 0; k < out.size(); ++k) {
      if (lane_of[k] == SIZE_MAX) continue;
      const auto& w = walks[lane_of[k]];
      auto& row = out[k];
      row.cycle_len = w.cycle_len;
      if (!orbit.finite && !row.member && w.first_hit >= 0) {
        row.member = true;
        row.steps = static_cast<std::int64_t>(K) + w.first_hit;
      }
    }
  });

  DensityReport rep;
  rep.f = f;
  rep.g = g;
  rep.a0 = a0;
  rep.X = X;
  rep.orbit_finite = orbit.finite;
  rep.threads = std::max(1u, options.threads);
  rep.seed = options.seed;
  rep.isa = simd::isa_name(simd::active_isa());
  rep.primes_tested = primes.size();
  for (auto& chunk : rows) {
    for (const auto& r : chunk) rep.members += r.member ? 1 : 0;
    if (options.per_prime) rep.rows.insert(rep.rows.end(), chunk.begin(), chunk.end());
  }
  rep.estimate = static_cast<double>(rep.members) / static_cast<double>(rep.primes_tested);
  if (options.upper_bound_depth > 0 && f.degree() == 2 && f.is_monic()) {
    rep.upper_bounds = chebotarev_upper_bound(QuadMap::from_poly(f), g, options.upper_bound_depth, X, options.threads);
  }
  return rep;
}

ZeroPeriodicReport zero_periodic_density(const IntPoly& f, std::uint64_t X, unsigned threads) {
  if (f.degree() < 1) throw std::invalid_argument("zero_periodic_density: deg f must be >= 1");
  const auto primes = prime_sieve(X);
  const std::size_t chunks = (primes.size() + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> counts(chunks, 0);
  run_chunks(chunks, threads, [&](std::size_t ci) {
    const std::size_t lo = ci * kChunk;
    const std::size_t hi = std::min(primes.size(), lo + kChunk);
    simd::OrbitLanes lanes;
    lanes.resize(hi - lo, static_cast<unsigned>(f.degree() + 1), 0);
    for (std::size_t j = 0; j < hi - lo; ++j) {
      const std::uint32_t p = primes[lo + j];
      lanes.modulus[j] = p;
      lanes.start[j] = static_cast<std::uint32_t>(mod_u64(f.coeff(0), p));  // f(0)
      fill_coeffs(lanes.f_coeffs, lanes.lanes, j, f, p);
      lanes.purely_periodic[j] = bijective_mod(f, p) ? 1 : 0;
    }
    std::vector<simd::OrbitWalk> walks;
    simd::walk_orbits(lanes, walks);
    // 0 recurs from f(0) exactly when 0 lies on a cycle.
    for (const auto& w : walks) counts[ci] += w.first_hit >= 0 ? 1 : 0;
  });
  ZeroPeriodicReport rep;
  rep.X = X;
  rep.primes_tested = primes.size();
  for (const auto c : counts) rep.periodic += c;
  rep.fraction = rep.primes_tested == 0 ? 0.0 : static_cast<double>(rep.periodic) / static_cast<double>(rep.primes_tested);
  return rep;
}

}  // namespace qdyn

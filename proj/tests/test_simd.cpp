#include <doctest.h>

#include <algorithm>
#include <random>
#include <unordered_map>

#include "oracles.hpp"
#include "qdyn/simd/orbit_kernel.hpp"

using namespace qdyn::simd;

namespace {

std::uint64_t horner(const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
  return acc;
}

// Walk with a visited map: index of the first hit and the cycle length.
OrbitWalk reference_walk(const OrbitLanes& in, std::size_t j) {
  const std::uint64_t p = in.modulus[j];
  std::vector<std::uint64_t> fc, gc;
  for (unsigned i = 0; i < in.f_terms; ++i) fc.push_back(in.f_coeffs[i * in.lanes + j]);
  for (unsigned i = 0; i < in.g_terms; ++i) gc.push_back(in.g_coeffs[i * in.lanes + j]);
  std::unordered_map<std::uint64_t, std::uint64_t> seen;
  OrbitWalk w;
  std::uint64_t x = in.start[j] % p;
  for (std::uint64_t n = 0;; ++n) {
    if (auto it = seen.find(x); it != seen.end()) {
      w.cycle_len = n - it->second;
      return w;
    }
    seen.emplace(x, n);
    const bool hit = gc.empty() ? x == 0 : horner(gc, x, p) == 0;
    if (hit && w.first_hit < 0) w.first_hit = static_cast<std::int64_t>(n);
    x = horner(fc, x, p);
  }
}

OrbitLanes random_lanes(std::mt19937_64& rng, std::size_t n, unsigned f_terms, unsigned g_terms,
                        std::uint32_t max_p, bool bijective) {
  static const std::vector<std::uint32_t> primes = oracle::primes_upto(200000);
  OrbitLanes in;
  in.resize(n, f_terms, g_terms);
  const auto below = static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), max_p) - primes.begin());
  for (std::size_t j = 0; j < n; ++j) {
    std::uint32_t p = primes[rng() % below];
    if (max_p > 200000 && j % 3 == 0) {
      // Large, possibly composite moduli, some routed to the scalar remainder path.
      p = static_cast<std::uint32_t>(max_p - 1 - rng() % 1000);
    }
    in.modulus[j] = p;
    in.start[j] = static_cast<std::uint32_t>(rng() % p);
    for (unsigned i = 0; i < f_terms; ++i) in.f_coeffs[i * n + j] = static_cast<std::uint32_t>(rng() % p);
    for (unsigned i = 0; i < g_terms; ++i) in.g_coeffs[i * n + j] = static_cast<std::uint32_t>(rng() % p);
    if (bijective) {
      in.f_coeffs[1 * n + j] = static_cast<std::uint32_t>(1 + rng() % (p - 1));
      in.purely_periodic[j] = 1;
    } else {
      in.f_coeffs[(f_terms - 1) * n + j] = 1;
    }
  }
  return in;
}

}  // namespace

TEST_CASE("isa selection") {
  const Isa before = active_isa();
  set_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  set_isa(Isa::avx2);
  CHECK(active_isa() == detected_isa());
  set_isa(before);
  CHECK(std::string(isa_name(Isa::scalar)) == "scalar");
  CHECK(std::string(isa_name(Isa::avx2)) == "avx2");
}

TEST_CASE("scalar walk matches the visited-set reference") {
  std::mt19937_64 rng(1);
  for (unsigned f_terms : {2u, 3u, 4u}) {
    for (unsigned g_terms : {0u, 2u, 3u}) {
      OrbitLanes in = random_lanes(rng, 200, f_terms, g_terms, 5000, false);
      in.stop_at_first_hit = false;
      std::vector<OrbitWalk> out;
      walk_orbits_scalar(in, out);
      for (std::size_t j = 0; j < in.lanes; ++j) {
        const OrbitWalk ref = reference_walk(in, j);
        CHECK(out[j].first_hit == ref.first_hit);
        CHECK(out[j].cycle_len == ref.cycle_len);
      }
    }
  }
}

TEST_CASE("purely periodic lanes report the full period") {
  std::mt19937_64 rng(2);
  OrbitLanes in = random_lanes(rng, 100, 2, 0, 3000, true);
  in.stop_at_first_hit = false;
  std::vector<OrbitWalk> out;
  walk_orbits_scalar(in, out);
  for (std::size_t j = 0; j < in.lanes; ++j) {
    const OrbitWalk ref = reference_walk(in, j);
    CHECK(out[j].cycle_len == ref.cycle_len);
    CHECK(out[j].steps == ref.cycle_len);
    CHECK(out[j].first_hit == ref.first_hit);
  }
}

TEST_CASE("AVX2 path is bit-identical to the scalar path") {
  if (detected_isa() != Isa::avx2) {
    MESSAGE("AVX2 not available; skipping");
    return;
  }
  std::mt19937_64 rng(3);
  for (int round = 0; round < 30; ++round) {
    const unsigned f_terms = 2 + round % 3;
    const unsigned g_terms = (round / 3) % 3 == 0 ? 0 : 2 + round % 2;
    // Linear lanes can have periods near p, so only nonlinear maps get large moduli.
    const bool bijective = round % 5 == 4 && f_terms == 2;
    const bool large = round % 4 == 3 && f_terms >= 3 && !bijective;
    const std::uint32_t max_p = bijective ? 20000 : large ? (1u << 27) : 200000;
    OrbitLanes in = random_lanes(rng, 1 + static_cast<std::size_t>(rng() % 300), f_terms, g_terms, max_p, bijective);
    in.stop_at_first_hit = round % 2 == 0;
    std::vector<OrbitWalk> scalar, avx;
    walk_orbits_scalar(in, scalar);
    walk_orbits_avx2(in, avx);
    REQUIRE(scalar.size() == avx.size());
    for (std::size_t j = 0; j < in.lanes; ++j) {
      if (!(scalar[j] == avx[j])) {
        FAIL("lane " << j << " p=" << in.modulus[j] << ": scalar (" << scalar[j].first_hit << ", "
                     << scalar[j].cycle_len << ", " << scalar[j].steps << ") vs avx2 (" << avx[j].first_hit << ", "
                     << avx[j].cycle_len << ", " << avx[j].steps << ")");
      }
    }
  }
}

TEST_CASE("moduli near the vector limit") {
  if (detected_isa() != Isa::avx2) return;
  OrbitLanes in;
  const std::uint32_t ps[] = {kMaxSimdModulus - 5, kMaxSimdModulus - 39, kMaxSimdModulus + 15, 3, 2};
  in.resize(5, 3, 0);
  for (std::size_t j = 0; j < 5; ++j) {
    in.modulus[j] = ps[j];
    in.start[j] = ps[j] - 1;
    in.f_coeffs[0 * 5 + j] = ps[j] - 1;
    in.f_coeffs[1 * 5 + j] = ps[j] / 2;
    in.f_coeffs[2 * 5 + j] = 1;
  }
  in.stop_at_first_hit = false;
  std::vector<OrbitWalk> scalar, avx;
  walk_orbits_scalar(in, scalar);
  walk_orbits_avx2(in, avx);
  for (std::size_t j = 0; j < 5; ++j) CHECK(scalar[j] == avx[j]);
}

TEST_CASE("dispatch follows the selected path") {
  std::mt19937_64 rng(4);
  OrbitLanes in = random_lanes(rng, 64, 3, 0, 100000, false);
  std::vector<OrbitWalk> a, b, ref;
  walk_orbits_scalar(in, ref);
  const Isa before = active_isa();
  set_isa(Isa::scalar);
  walk_orbits(in, a);
  set_isa(Isa::avx2);
  walk_orbits(in, b);
  set_isa(before);
  CHECK(a == ref);
  CHECK(b == ref);
}

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qdyn/density/density.hpp"
#include "qdyn/error.hpp"
#include "qdyn/galois/process.hpp"
#include "qdyn/simd/orbit_kernel.hpp"

using namespace qdyn;

namespace {

// Exact integer orbit until it repeats or passes 10^30, then a visited-set
// walk mod p from the last exact value.
bool member_oracle(const IntPoly& f, const mpz_class& a0, std::uint64_t p) {
  const mpz_class huge("1000000000000000000000000000000");
  std::set<mpz_class> seen;
  mpz_class a = a0;
  for (;;) {
    if (seen.count(a) != 0) return false;  // finite orbit, no nonzero multiple of p
    seen.insert(a);
    if (a != 0 && a % static_cast<unsigned long>(p) == 0) return true;
    if (abs(a) > huge) break;
    a = f.evaluate(a);
  }
  std::set<std::uint64_t> visited;
  mpz_class r = a % static_cast<unsigned long>(p);
  if (r < 0) r += static_cast<unsigned long>(p);
  std::uint64_t x = r.get_ui();
  while (visited.insert(x).second) {
    x = oracle::eval_mod(f, x, p);
    if (x == 0) return true;
  }
  return false;
}

IntPoly random_poly(std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<long> d(-6, 6);
  std::vector<mpz_class> c;
  for (int i = 0; i < deg; ++i) c.emplace_back(d(rng));
  c.emplace_back(1 + (rng() % 2));
  return IntPoly(c);
}

}  // namespace

TEST_CASE("prime sieve") {
  CHECK(prime_sieve(10) == std::vector<std::uint32_t>{2, 3, 5, 7});
  CHECK(prime_sieve(100).size() == 25);
  CHECK(prime_sieve(1000000).size() == 78498);
  CHECK(prime_sieve(2).size() == 1);
  CHECK(prime_sieve(300000) == oracle::primes_upto(300000));
  std::vector<std::uint32_t> streamed;
  for_each_prime(300000, [&](std::uint32_t p) { streamed.push_back(p); });
  CHECK(streamed == oracle::primes_upto(300000));
  CHECK_THROWS(prime_sieve(std::uint64_t{1} << 32));
}

TEST_CASE("integer orbits") {
  const IntegerOrbit a = integer_orbit(IntPoly{-1, 0, 1}, 0);
  CHECK(a.finite);
  CHECK(a.cycle_length == 2);

  const IntegerOrbit b = integer_orbit(IntPoly{0, 0, 1}, 2);
  CHECK_FALSE(b.finite);

  const IntegerOrbit c = integer_orbit(IntPoly{-4, 0, 1}, 2);  // 2, 0, -4, 12, ...
  CHECK_FALSE(c.finite);
  CHECK(c.values.size() >= 3);
  CHECK(c.values[1] == 0);

  CHECK_THROWS_AS(integer_orbit(IntPoly{3}, 1), std::invalid_argument);
}

TEST_CASE("orbit divisibility examples") {
  CHECK(divides_orbit(IntPoly{1, 0, 1}, 0, 5));
  CHECK_FALSE(divides_orbit(IntPoly{1, 0, 1}, 0, 3));
  CHECK(divides_orbit(IntPoly{-1, 2}, 2, 3));
  // Zero values do not count: x^2 from 0 stays at 0.
  CHECK_FALSE(divides_orbit(IntPoly{0, 0, 1}, 0, 7));
  // 2, 0, -4, 12, ...: 0 is skipped but -4 brings in p = 2.
  CHECK(divides_orbit(IntPoly{-4, 0, 1}, 2, 2));
  CHECK(divides_orbit(IntPoly{-2, 0, 1}, 2, 2));
  CHECK_FALSE(divides_orbit(IntPoly{-2, 0, 1}, 2, 3));
}

TEST_CASE("membership agrees across walk strategies") {
  std::mt19937_64 rng(7);
  const auto primes = oracle::primes_upto(10000);
  for (int i = 0; i < 10; ++i) {
    const IntPoly f = random_poly(rng, 2 + i % 2);
    const mpz_class a0 = static_cast<long>(rng() % 11) - 5;
    DensityOptions opt;
    opt.per_prime = true;
    const DensityReport r = density_estimate(f, a0, 10000, IntPoly::identity(), opt);
    REQUIRE(r.rows.size() == primes.size());
    std::uint64_t members = 0;
    for (std::size_t k = 0; k < primes.size(); ++k) {
      const std::uint32_t p = primes[k];
      CHECK(r.rows[k].p == p);
      const bool visited = divides_orbit(f, a0, p);
      if (r.rows[k].member != visited) FAIL("Brent walk vs visited set: f = " << f.str() << ", p = " << p);
      if (p < 2000 && visited != member_oracle(f, a0, p)) FAIL("oracle disagrees: f = " << f.str() << ", p = " << p);
      members += visited ? 1 : 0;
    }
    CHECK(r.members == members);
  }
}

TEST_CASE("density reports") {
  const DensityReport a = density_estimate(IntPoly{0, 0, 1}, 2, 10000);
  CHECK(a.members == 1);
  CHECK(a.primes_tested == 1229);
  CHECK(a.estimate == doctest::Approx(1.0 / 1229));

  const DensityReport b = density_estimate(IntPoly{0, 0, 1}, 2, 100);
  CHECK(b.members == 1);
  CHECK(b.primes_tested == 25);

  // Finite orbit 0 -> -1 -> 0: only the value -1 is nonzero, so nothing divides.
  const DensityReport c = density_estimate(IntPoly{-1, 0, 1}, 0, 1000);
  CHECK(c.orbit_finite);
  CHECK(c.members == 0);

  // The sequence 2^n + 1 at a small cutoff.
  DensityOptions opt;
  opt.per_prime = true;
  const DensityReport h = density_estimate(IntPoly{-1, 2}, 2, 20000, IntPoly::identity(), opt);
  for (const PrimeRow& row : h.rows) {
    if (!row.member) continue;
    // steps is the first n with p | 2^n + 1.
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(row.steps));
    mpz_class a_n = v + 1;
    if (row.steps < 200) CHECK(a_n % row.p == 0);
  }
}

TEST_CASE("density is independent of threads and vector path") {
  DensityOptions opt;
  opt.per_prime = true;
  const IntPoly f{3, -6, 1};
  const DensityReport one = density_estimate(f, 0, 200000, IntPoly::identity(), opt);
  opt.threads = 4;
  const DensityReport four = density_estimate(f, 0, 200000, IntPoly::identity(), opt);
  CHECK(one.members == four.members);
  CHECK(one.estimate == four.estimate);
  REQUIRE(one.rows.size() == four.rows.size());
  bool same = true;
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    same = same && one.rows[i].member == four.rows[i].member && one.rows[i].steps == four.rows[i].steps &&
           one.rows[i].cycle_len == four.rows[i].cycle_len;
  }
  CHECK(same);

  const simd::Isa before = simd::active_isa();
  simd::set_isa(simd::Isa::scalar);
  const DensityReport scalar = density_estimate(f, 0, 200000, IntPoly::identity(), opt);
  simd::set_isa(before);
  CHECK(scalar.members == one.members);
  bool same_rows = scalar.rows.size() == one.rows.size();
  for (std::size_t i = 0; same_rows && i < one.rows.size(); ++i) {
    same_rows = scalar.rows[i].member == one.rows[i].member && scalar.rows[i].steps == one.rows[i].steps &&
                scalar.rows[i].cycle_len == one.rows[i].cycle_len;
  }
  CHECK(same_rows);
}

TEST_CASE("translated orbits") {
  // g = x - 2 on the orbit of x^2 - 4 from 0: values 0 - 2, -4 - 2, 12 - 2, ...
  const IntPoly f{-4, 0, 1};
  const IntPoly g{-2, 1};
  DensityOptions opt;
  opt.per_prime = true;
  const DensityReport r = density_estimate(f, 0, 2000, g, opt);
  for (const PrimeRow& row : r.rows) CHECK(row.member == divides_orbit(f, 0, row.p, g));
  CHECK(divides_orbit(f, 0, 5, g));  // 12 - 2 = 10
}

TEST_CASE("periodic zero") {
  const ZeroPeriodicReport a = zero_periodic_density(IntPoly{5, 0, 1}, 100);
  std::uint64_t oracle_count = 0;
  for (std::uint32_t p : oracle::primes_upto(100)) {
    // 0 is periodic iff walking from f(0) comes back to 0.
    std::uint64_t x = oracle::eval_mod(IntPoly{5, 0, 1}, 0, p);
    for (std::uint32_t i = 0; i <= p && x != 0; ++i) x = oracle::eval_mod(IntPoly{5, 0, 1}, x, p);
    oracle_count += x == 0 ? 1 : 0;
  }
  CHECK(a.periodic == oracle_count);
  CHECK(a.primes_tested == 25);

  const ZeroPeriodicReport b = zero_periodic_density(IntPoly{0, 0, 1}, 100);
  CHECK(b.periodic == 25);

  // Starting at 0, p divides the orbit exactly when 0 is periodic mod p.
  const ZeroPeriodicReport c = zero_periodic_density(IntPoly{1, 0, 1}, 10000);
  const DensityReport d = density_estimate(IntPoly{1, 0, 1}, 0, 10000);
  CHECK(c.periodic == d.members);
  // The orbit of 1 is the orbit of 0 without its leading zero.
  CHECK(density_estimate(IntPoly{1, 0, 1}, 1, 10000).members == d.members);
}

TEST_CASE("preimage search") {
  const QuadMap f(0, 1);
  CHECK(preimage_exists_mod_p(f, IntPoly::identity(), 2, 5));
  CHECK_FALSE(preimage_exists_mod_p(f, IntPoly::identity(), 1, 3));
  CHECK(preimage_exists_mod_p(f, IntPoly::identity(), 0, 3));
  CHECK_FALSE(preimage_exists_mod_p(f, IntPoly{1, 0, 1}, 0, 3));
  CHECK(max_preimage_depth(f, IntPoly{1, 0, 1}, 5, 3) == -1);
  CHECK_THROWS_AS(preimage_exists_mod_p(f, IntPoly::identity(), 1, 2), std::invalid_argument);

  const QuadMap maps[] = {QuadMap(0, 1), QuadMap(0, 5), QuadMap(-3, 3), QuadMap(1, -1), QuadMap(4, 2)};
  const IntPoly gs[] = {IntPoly::identity(), IntPoly{-2, 1}, IntPoly{1, 0, 1}};
  for (const QuadMap& m : maps) {
    for (const IntPoly& g : gs) {
      for (std::uint32_t p : oracle::primes_upto(150)) {
        if (p == 2) continue;
        for (unsigned n = 0; n <= 3; ++n) {
          if (preimage_exists_mod_p(m, g, n, p) != oracle::solvable_mod_p(m.poly(), g, n, p)) {
            FAIL("preimage mismatch: f = " << m.poly().str() << ", g = " << g.str() << ", n = " << n << ", p = " << p);
          }
        }
      }
    }
  }
}

TEST_CASE("Frobenius statistics for the preimage tower") {
  const QuadMap f(0, 1);
  const auto b = chebotarev_upper_bound(f, IntPoly::identity(), 2, 10000);
  REQUIRE(b.size() == 2);
  CHECK(std::abs(b[0].second - 0.5) < 0.03);
  CHECK(std::abs(b[1].second - 0.375) < 0.03);

  // Exact counts against brute force at a small cutoff.
  const auto small = chebotarev_upper_bound(f, IntPoly::identity(), 3, 3000);
  std::uint64_t odd = 0, hits[3] = {0, 0, 0};
  for (std::uint32_t p : oracle::primes_upto(3000)) {
    if (p == 2) continue;
    ++odd;
    for (unsigned n = 1; n <= 3; ++n) hits[n - 1] += oracle::solvable_mod_p(f.poly(), IntPoly::identity(), n, p);
  }
  for (unsigned n = 1; n <= 3; ++n) CHECK(small[n - 1].second == static_cast<double>(hits[n - 1]) / odd);

  const auto deep = chebotarev_upper_bound(f, IntPoly::identity(), 8, 100000, 2);
  for (std::size_t i = 1; i < deep.size(); ++i) CHECK(deep[i].second <= deep[i - 1].second + 1e-12);
  CHECK(deep[7].second < qn_exact(8).get_d() + 0.05);

  CHECK_THROWS_AS(chebotarev_upper_bound(f, IntPoly::identity(), 21, 1000), unsupported_size);
}

TEST_CASE("membership stays below the preimage bound") {
  const QuadMap maps[] = {QuadMap(0, 5), QuadMap(0, 3), QuadMap(-3, 3)};
  for (const QuadMap& f : maps) {
    const auto bound = chebotarev_upper_bound(f, IntPoly::identity(), 6, 100000);
    for (long a0 : {1, 2, 3}) {
      const DensityReport r = density_estimate(f.poly(), a0, 100000);
      for (const auto& [n, frac] : bound) CHECK(r.estimate <= frac + 0.01);
    }
  }
}

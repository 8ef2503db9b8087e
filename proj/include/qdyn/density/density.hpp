#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdyn/polydyn/int_poly.hpp"
#include "qdyn/polydyn/quad_map.hpp"

namespace qdyn {

// Primes up to X by a segmented odd-only sieve. X must be below 2^32.
std::vector<std::uint32_t> prime_sieve(std::uint64_t X);

// Streams primes up to X in ascending order, one sieve segment at a time.
void for_each_prime(std::uint64_t X, const std::function<void(std::uint32_t)>& visit);

// Integer orbit a0, f(a0), ... classified as finite or escaping. Past the
// escape bound |a_n| grows strictly and g(a_n) cannot vanish.
struct IntegerOrbit {
  bool finite = false;
  // finite: the distinct values a_0..a_{t+l-1}; escaping: a_0..a_{K-1}.
  std::vector<mpz_class> values;
  // escaping: a_K, the first value past the bound.
  mpz_class tail_start;
  std::size_t cycle_start = 0;   // finite only
  std::size_t cycle_length = 0;  // finite only
};

// Throws std::invalid_argument for deg f < 1 or g == 0, unsupported_size when
// the orbit needs more than 2^20 steps to settle.
IntegerOrbit integer_orbit(const IntPoly& f, const mpz_class& a0, const IntPoly& g = IntPoly::identity());

// Whether p divides g(a_i) for some i with g(a_i) != 0. Reference
// implementation: exact prefix values, then a visited-set walk mod p.
bool divides_orbit(const IntPoly& f, const mpz_class& a0, std::uint64_t p, const IntPoly& g = IntPoly::identity());

struct PrimeRow {
  std::uint32_t p;
  bool member;
  std::int64_t steps;  // index n of the first a_n with p | g(a_n) != 0, -1 if none
  std::uint64_t cycle_len;  // cycle length of the orbit mod p past the prefix
};

struct DensityOptions {
  unsigned threads = 1;
  bool per_prime = false;
  unsigned upper_bound_depth = 0;  // > 0 adds chebotarev_upper_bound for monic quadratic f
  std::uint64_t seed = 0x5eed;     // echoed only; the computation is deterministic
};

struct DensityReport {
  IntPoly f;
  IntPoly g;
  mpz_class a0;
  std::uint64_t X = 0;
  std::uint64_t primes_tested = 0;
  std::uint64_t members = 0;
  double estimate = 0.0;
  bool orbit_finite = false;
  std::vector<std::pair<unsigned, double>> upper_bounds;
  std::vector<PrimeRow> rows;  // filled when options.per_prime
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string isa;
};

DensityReport density_estimate(const IntPoly& f, const mpz_class& a0, std::uint64_t X,
                               const IntPoly& g = IntPoly::identity(), const DensityOptions& options = {});

struct ZeroPeriodicReport {
  std::uint64_t X = 0;
  std::uint64_t primes_tested = 0;
  std::uint64_t periodic = 0;
  double fraction = 0.0;
};

// Fraction of p <= X for which 0 lies on a cycle of f mod p.
ZeroPeriodicReport zero_periodic_density(const IntPoly& f, std::uint64_t X, unsigned threads = 1);

// Solvability of g(f^n(x)) = 0 mod an odd prime p, by walking f-preimages
// back from the roots of g. Throws std::invalid_argument for even p.
bool preimage_exists_mod_p(const QuadMap& f, const IntPoly& g, unsigned n, std::uint64_t p);

// Largest depth d <= N with a depth-d preimage chain mod p, or -1 when g has
// no root mod p.
int max_preimage_depth(const QuadMap& f, const IntPoly& g, unsigned N, std::uint64_t p);

inline constexpr unsigned kMaxPreimageDepth = 20;

// For n = 1..N, the fraction of odd p <= X with preimage_exists_mod_p.
// p = 2 is skipped. Throws unsupported_size for N > 20.
std::vector<std::pair<unsigned, double>> chebotarev_upper_bound(const QuadMap& f, const IntPoly& g, unsigned N,
                                                                std::uint64_t X, unsigned threads = 1);

}  // namespace qdyn

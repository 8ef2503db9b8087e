#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qdyn {

// Deterministic work budget for factor(). Counted in Pollard-rho iterations
// rather than wall time so results never depend on machine speed.
struct Effort {
  std::uint64_t rho_iterations = 1'000'000;
  std::uint32_t trial_bound = 1u << 16;

  static Effort unlimited() { return {~std::uint64_t{0}, 1u << 16}; }
  static Effort trial_only(std::uint32_t bound = 1u << 16) { return {0, bound}; }
};

enum class CofactorStatus { unit, prime, composite, unknown };

const char* to_string(CofactorStatus s);

struct MpzLess {
  bool operator()(const mpz_class& a, const mpz_class& b) const { return cmp(a, b) < 0; }
};

// Partial factorization n = sign * cofactor * prod p^e.
//
// `factors` holds proven primes only (all below 2^64). Anything else stays in
// `cofactor`: a single probable prime (status prime), a known composite the
// budget could not split (composite), or a residue never tested (unknown).
// `probable_primes` lists probable-prime divisors of the cofactor that were
// split out during the search.
struct FactoredValue {
  int sign = 0;
  std::map<mpz_class, unsigned long, MpzLess> factors;
  mpz_class cofactor = 1;
  CofactorStatus cofactor_status = CofactorStatus::unit;
  std::vector<mpz_class> probable_primes;

  mpz_class value() const;
  bool complete() const { return cofactor_status == CofactorStatus::unit; }
  unsigned long exponent(const mpz_class& p) const;

  // "2 * 3 * 5^2 * [c]" style rendering, "-" prefix for negatives.
  std::string str() const;
};

// Partially factor a nonzero integer within `effort`. Throws std::domain_error
// for n == 0.
FactoredValue factor(const mpz_class& n, const Effort& effort = {});

}  // namespace qdyn

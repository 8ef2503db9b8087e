#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qdyn/exactnum/dyadic.hpp"

namespace qdyn {

// ---- word-size modular helpers ---------------------------------------------

__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Inverse of a modulo m; requires gcd(a, m) == 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

// Lossless conversions for values that fit in 64 bits.
mpz_class from_u64(std::uint64_t v);
std::uint64_t to_u64(const mpz_class& v);  // requires 0 <= v < 2^64
inline bool fits_u64(const mpz_class& v) { return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

// x mod m as a residue in [0, m), for any sign of x.
std::uint64_t mod_u64(const mpz_class& x, std::uint64_t m);

// ---- valuations and squares ------------------------------------------------

// Largest e with p^e | x. Throws undefined_valuation for x == 0.
unsigned long valuation(const mpz_class& x, const mpz_class& p);
unsigned long valuation(const mpz_class& x, std::uint64_t p);

// v_p of a dyadic rational. For odd p this is v_p(num); for p == 2 it is
// v_2(num) - kexp. Throws undefined_valuation for q == 0.
long dyadic_valuation(const Dyadic& q, std::uint64_t p);

// True iff q is the square of a dyadic rational: q >= 0, kexp even and
// num a perfect square.
bool is_square(const Dyadic& q);

// ---- primality --------------------------------------------------------------

struct PrimalityConfig {
  // Miller-Rabin with the first twelve primes as bases is exact below
  // 3.3 * 10^24, which covers every 64-bit input.
  std::array<std::uint32_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  // Extra pseudo-random bases for inputs >= 2^64, giving error < 4^-64.
  unsigned extra_rounds = 64;
  std::uint64_t extra_seed = 0x9e3779b97f4a7c15ULL;
};

const PrimalityConfig& primality_config();

bool is_prime(std::uint64_t n);
bool is_prime(const mpz_class& n);

// True when is_prime(n) is a proof rather than a probabilistic verdict.
inline bool primality_is_proven(const mpz_class& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

// Square root of a modulo an odd prime p, choosing the smaller root r <= p - r.
// Returns nullopt for non-residues. Throws std::domain_error if p is even or
// composite, or if a >= p.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

// Primes below `limit` by a plain sieve; used for trial division tables.
std::vector<std::uint32_t> small_primes(std::uint32_t limit);

}  // namespace qdyn

#include "qdyn/exactnum/arith.hpp"

#include <random>
#include <stdexcept>

#include "qdyn/error.hpp"

namespace qdyn {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    const i128 q = r / new_r;
    const i128 tt = t - q * new_t;
    t = new_t;
    new_t = tt;
    const i128 rr = r - q * new_r;
    r = new_r;
    new_r = rr;
  }
  if (r != 1) throw std::domain_error("inv_mod: not invertible");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

mpz_class from_u64(std::uint64_t v) {
  mpz_class out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

std::uint64_t to_u64(const mpz_class& v) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

std::uint64_t mod_u64(const mpz_class& x, std::uint64_t m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), from_u64(m).get_mpz_t());
  return to_u64(r);
}

unsigned long valuation(const mpz_class& x, const mpz_class& p) {
  if (sgn(x) == 0) throw undefined_valuation("valuation of zero is undefined");
  if (p < 2) throw std::domain_error("valuation: p must be a prime");
  mpz_class rest;
  return mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
}

unsigned long valuation(const mpz_class& x, std::uint64_t p) {
  return valuation(x, from_u64(p));
}

long dyadic_valuation(const Dyadic& q, std::uint64_t p) {
  if (q.is_zero()) throw undefined_valuation("valuation of zero is undefined");
  const auto v = static_cast<long>(valuation(q.num(), p));
  return p == 2 ? v - static_cast<long>(q.kexp()) : v;
}

bool is_square(const Dyadic& q) {
  if (q.sign() < 0) return false;
  if (q.is_zero()) return true;
  if (q.kexp() % 2 != 0) return false;
  return mpz_perfect_square_p(q.num().get_mpz_t()) != 0;
}

const PrimalityConfig& primality_config() {
  static const PrimalityConfig config{};
  return config;
}

namespace {

bool miller_rabin_u64(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  a %= n;
  if (a == 0) return true;
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool miller_rabin_mpz(const mpz_class& n, const mpz_class& a, const mpz_class& d, unsigned s) {
  const mpz_class nm1 = n - 1;
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == nm1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (const std::uint32_t p : primality_config().bases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (const std::uint32_t a : primality_config().bases) {
    if (!miller_rabin_u64(n, a)) return false;
  }
  return true;
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  if (primality_is_proven(n)) return is_prime(to_u64(n));
  const auto& config = primality_config();
  for (const std::uint32_t p : config.bases) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  mpz_class d = n - 1;
  const unsigned s = static_cast<unsigned>(mpz_scan1(d.get_mpz_t(), 0));
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (const std::uint32_t a : config.bases) {
    if (!miller_rabin_mpz(n, mpz_class(a), d, s)) return false;
  }
  // Seeded per call so the verdict depends only on n.
  std::mt19937_64 rng(config.extra_seed);
  gmp_randclass gmp_rng(gmp_randinit_mt);
  gmp_rng.seed(static_cast<unsigned long>(rng()));
  const mpz_class span = n - 3;
  for (unsigned i = 0; i < config.extra_rounds; ++i) {
    const mpz_class a = gmp_rng.get_z_range(span) + 2;
    if (!miller_rabin_mpz(n, a, d, s)) return false;
  }
  return true;
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw std::domain_error("sqrt_mod: p must be an odd prime");
  if (a >= p) throw std::domain_error("sqrt_mod: residue out of range");
  if (a == 0) return 0;
  if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;

  std::uint64_t r = 0;
  if (p % 4 == 3) {
    r = pow_mod(a, (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    std::uint64_t z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t c = pow_mod(z, q, p);
    std::uint64_t t = pow_mod(a, q, p);
    r = pow_mod(a, (q + 1) / 2, p);
    unsigned m = s;
    while (t != 1) {
      unsigned i = 0;
      std::uint64_t t2 = t;
      while (t2 != 1) {
        t2 = mul_mod(t2, t2, p);
        ++i;
      }
      std::uint64_t b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
      m = i;
      c = mul_mod(b, b, p);
      t = mul_mod(t, c, p);
      r = mul_mod(r, b, p);
    }
  }
  return std::min(r, p - r);
}

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 3) return out;
  std::vector<bool> composite(limit, false);
  for (std::uint32_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace qdyn

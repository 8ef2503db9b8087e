#include "qdyn/exactnum/factor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qdyn/exactnum/arith.hpp"

namespace qdyn {

const char* to_string(CofactorStatus s) {
  switch (s) {
    case CofactorStatus::unit: return "unit";
    case CofactorStatus::prime: return "prime";
    case CofactorStatus::composite: return "composite";
    case CofactorStatus::unknown: return "unknown";
  }
  return "unknown";
}

mpz_class FactoredValue::value() const {
  mpz_class v = cofactor;
  for (const auto& [p, e] : factors) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    v *= pe;
  }
  return sign * v;
}

unsigned long FactoredValue::exponent(const mpz_class& p) const {
  const auto it = factors.find(p);
  return it == factors.end() ? 0 : it->second;
}

std::string FactoredValue::str() const {
  if (sign == 0) return "0";
  std::string out = sign < 0 ? "-" : "";
  bool first = true;
  for (const auto& [p, e] : factors) {
    if (!first) out += " * ";
    first = false;
    out += p.get_str();
    if (e > 1) out += "^" + std::to_string(e);
  }
  if (cofactor != 1 || first) {
    if (!first) out += " * ";
    out += cofactor == 1 ? "1" : "[" + cofactor.get_str() + "]";
  }
  return out;
}

namespace {

// Brent's variant of Pollard rho on a 64-bit odd composite. Returns a
// nontrivial divisor or 0 when the budget runs out for this constant.
std::uint64_t brent_u64(std::uint64_t n, std::uint64_t c, std::uint64_t& budget) {
  auto step = [&](std::uint64_t v) {
    const std::uint64_t s = mul_mod(v, v, n) + c;
    return s >= n || s < c ? s - n : s;
  };
  constexpr std::uint64_t batch = 128;
  std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
  for (std::uint64_t r = 1; g == 1; r *= 2) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = step(y);
    for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
      ys = y;
      const std::uint64_t lim = std::min(batch, r - k);
      if (budget < lim) return 0;
      budget -= lim;
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = step(y);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
    }
  }
  if (g == n) {
    do {
      ys = step(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

mpz_class brent_mpz(const mpz_class& n, unsigned long c, std::uint64_t& budget) {
  auto step = [&](mpz_class& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  constexpr std::uint64_t batch = 128;
  mpz_class y = 2, x = 2, ys = 2, q = 1, g = 1, diff;
  for (std::uint64_t r = 1; g == 1; r *= 2) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
      ys = y;
      const std::uint64_t lim = std::min(batch, r - k);
      if (budget < lim) return 0;
      budget -= lim;
      for (std::uint64_t i = 0; i < lim; ++i) {
        step(y);
        diff = abs(x - y);
        q = q * diff % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    }
  }
  if (g == n) {
    do {
      step(ys);
      diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? mpz_class(0) : g;
}

// Nontrivial divisor of an odd composite, or 0 on budget exhaustion.
mpz_class split(const mpz_class& n, std::uint64_t& budget) {
  for (unsigned long c = 1; budget > 0; ++c) {
    if (fits_u64(n)) {
      const std::uint64_t d = brent_u64(to_u64(n), c, budget);
      if (d != 0) return from_u64(d);
    } else {
      mpz_class d = brent_mpz(n, c, budget);
      if (d != 0) return d;
    }
  }
  return 0;
}

constexpr std::uint32_t kTrialCap = 1u << 20;

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> table = small_primes(kTrialCap);
  return table;
}

}  // namespace

FactoredValue factor(const mpz_class& n, const Effort& effort) {
  if (n == 0) throw std::domain_error("factor: zero has no factorization");
  FactoredValue out;
  out.sign = sgn(n);
  mpz_class rest = abs(n);
  const std::uint32_t bound = std::min(effort.trial_bound, kTrialCap);

  bool past_sqrt = false;
  for (const std::uint32_t p : trial_primes()) {
    if (p >= bound) break;
    if (mpz_cmp_ui(rest.get_mpz_t(), static_cast<unsigned long>(p) * p) < 0) {
      past_sqrt = true;
      break;
    }
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    const mpz_class pp = p;
    out.factors[pp] = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pp.get_mpz_t());
  }
  // Whatever survives trial division to sqrt is prime.
  if (rest > 1 && (past_sqrt || mpz_cmp_ui(rest.get_mpz_t(), static_cast<unsigned long>(bound) * bound) < 0)) {
    out.factors[rest] += 1;
    rest = 1;
  }

  std::uint64_t budget = effort.rho_iterations;
  std::vector<std::pair<mpz_class, unsigned long>> work;
  std::vector<std::pair<mpz_class, unsigned long>> leftover;
  if (rest > 1) work.emplace_back(rest, 1);
  bool untested = false;

  while (!work.empty()) {
    auto [m, mult] = work.back();
    work.pop_back();
    if (m == 1) continue;
    if (effort.rho_iterations == 0 && !primality_is_proven(m)) {
      // Trial-only mode leaves large pieces untested.
      untested = true;
      leftover.emplace_back(m, mult);
      continue;
    }
    if (is_prime(m)) {
      if (primality_is_proven(m)) {
        out.factors[m] += mult;
      } else {
        out.probable_primes.push_back(m);
        leftover.emplace_back(m, mult);
      }
      continue;
    }
    if (mpz_perfect_power_p(m.get_mpz_t())) {
      const unsigned long bits = mpz_sizeinbase(m.get_mpz_t(), 2);
      for (unsigned long k = bits; k >= 2; --k) {
        mpz_class root;
        if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
          work.emplace_back(root, mult * k);
          break;
        }
      }
      continue;
    }
    const mpz_class d = split(m, budget);
    if (d == 0) {
      leftover.emplace_back(m, mult);
      continue;
    }
    work.emplace_back(d, mult);
    work.emplace_back(m / d, mult);
  }

  // Keys must not divide the cofactor: strip found primes from leftovers.
  out.cofactor = 1;
  bool all_probable = true;
  for (auto& [m, mult] : leftover) {
    for (auto& [p, e] : out.factors) {
      const unsigned long v = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
      e += v * mult;
    }
    if (m == 1) continue;
    mpz_class me;
    mpz_pow_ui(me.get_mpz_t(), m.get_mpz_t(), mult);
    out.cofactor *= me;
    if (std::find(out.probable_primes.begin(), out.probable_primes.end(), m) == out.probable_primes.end()) {
      all_probable = false;
    }
  }
  std::sort(out.probable_primes.begin(), out.probable_primes.end());
  out.probable_primes.erase(std::unique(out.probable_primes.begin(), out.probable_primes.end()),
                            out.probable_primes.end());

  if (out.cofactor == 1) {
    out.cofactor_status = CofactorStatus::unit;
  } else if (untested) {
    out.cofactor_status = CofactorStatus::unknown;
  } else if (all_probable && out.probable_primes.size() == 1 && out.cofactor == out.probable_primes.front()) {
    out.cofactor_status = CofactorStatus::prime;
  } else {
    out.cofactor_status = CofactorStatus::composite;
  }
  return out;
}

}  // namespace qdyn

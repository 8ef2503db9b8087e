#pragma once

// Slow, independent reference computations shared by the unit tests and the
// acceptance runner. Nothing here calls into the library's algorithms beyond
// plain polynomial arithmetic.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "qdyn/exactnum/arith.hpp"
#include "qdyn/polydyn/int_poly.hpp"

namespace oracle {

// Determinant over Q by Gaussian elimination with rational pivots.
inline mpz_class determinant(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const mpq_class factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  return det.get_num();
}

// Sylvester-matrix resultant of h1 and h2, both nonzero, not both constant.
inline mpz_class sylvester_resultant(const qdyn::IntPoly& h1, const qdyn::IntPoly& h2) {
  const int m = h1.degree();
  const int n = h2.degree();
  const auto size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<mpq_class>> s(size, std::vector<mpq_class>(size, 0));
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i <= m; ++i) s[r][r + i] = h1.coeff(m - i);
  }
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = h2.coeff(n - i);
  }
  return determinant(std::move(s));
}

// g(f^n(x)) by repeated substitution through Horner's rule.
inline qdyn::IntPoly iterate_compose(const qdyn::IntPoly& g, const qdyn::IntPoly& f, unsigned n) {
  qdyn::IntPoly inner = qdyn::IntPoly::identity();
  for (unsigned i = 0; i < n; ++i) {
    qdyn::IntPoly next;
    for (int k = f.degree(); k >= 0; --k) next = next * inner + qdyn::IntPoly::constant(f.coeff(k));
    inner = next;
  }
  qdyn::IntPoly out;
  for (int k = g.degree(); k >= 0; --k) out = out * inner + qdyn::IntPoly::constant(g.coeff(k));
  return out;
}

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Primes up to X by the plain sieve of Eratosthenes.
inline std::vector<std::uint32_t> primes_upto(std::uint32_t X) {
  std::vector<bool> composite(X + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= X; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= X; j += i) composite[j] = true;
  }
  return out;
}

inline std::uint64_t eval_mod(const qdyn::IntPoly& h, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (int k = h.degree(); k >= 0; --k) {
    mpz_class c = h.coeff(k) % static_cast<unsigned long>(p);
    if (c < 0) c += static_cast<unsigned long>(p);
    acc = static_cast<std::uint64_t>((static_cast<qdyn::u128>(acc) * x + c.get_ui()) % p);
  }
  return acc;
}

// Whether g(f^n(x)) = 0 has a solution mod p, by trying every residue.
inline bool solvable_mod_p(const qdyn::IntPoly& f, const qdyn::IntPoly& g, unsigned n, std::uint64_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t y = x;
    for (unsigned i = 0; i < n; ++i) y = eval_mod(f, y, p);
    if (eval_mod(g, y, p) == 0) return true;
  }
  return false;
}

}  // namespace oracle

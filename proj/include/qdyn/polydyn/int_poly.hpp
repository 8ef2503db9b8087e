#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "qdyn/exactnum/dyadic.hpp"

namespace qdyn {

// Integer polynomial, coefficients ascending by degree with a nonzero
// leading entry. The zero polynomial has no coefficients and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const mpz_class& c);
  static IntPoly monomial(const mpz_class& c, unsigned deg);
  static IntPoly identity() { return monomial(1, 1); }

  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const mpz_class& leading() const { return coeffs_.back(); }
  mpz_class coeff(int i) const;

  Dyadic evaluate(const Dyadic& x) const;
  mpz_class evaluate(const mpz_class& x) const;
  IntPoly derivative() const;

  // gcd of the coefficients (positive), 0 for the zero polynomial.
  mpz_class content() const;
  IntPoly primitive_part() const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& rhs);
  IntPoly& operator-=(const IntPoly& rhs);
  IntPoly& operator*=(const IntPoly& rhs);
  IntPoly& operator*=(const mpz_class& k);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const IntPoly& b) { return a *= b; }
  friend IntPoly operator*(IntPoly a, const mpz_class& k) { return a *= k; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  // Canonical text form, e.g. "x^2 - 10*x + 17"; "0" for zero.
  std::string str() const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

IntPoly pow(const IntPoly& p, unsigned e);

// g(f(x)).
IntPoly compose(const IntPoly& g, const IntPoly& f);

// f^n(x), with f^0 = x.
IntPoly iterate(const IntPoly& f, unsigned n);

// g(f^n(x)).
IntPoly compose_iterate(const IntPoly& g, const IntPoly& f, unsigned n);

// a / b when b divides a in Z[x]; nullopt otherwise. b must be nonzero.
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);

// Primitive gcd with positive leading coefficient (primitive remainder sequence).
IntPoly gcd(const IntPoly& a, const IntPoly& b);

bool is_squarefree(const IntPoly& h);

// Resultant lc(h1)^deg(h2) * prod_{h1(a)=0} h2(a), from the Sylvester matrix by
// fraction-free elimination. Zero if either argument is zero. Throws
// std::domain_error if both are constant.
mpz_class resultant(const IntPoly& h1, const IntPoly& h2);

}  // namespace qdyn

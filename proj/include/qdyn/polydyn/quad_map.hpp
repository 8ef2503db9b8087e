#pragma once

#include <gmpxx.h>

#include "qdyn/exactnum/dyadic.hpp"
#include "qdyn/polydyn/int_poly.hpp"

namespace qdyn {

// Monic quadratic x^2 + b x + c written as (x - gamma)^2 + gamma + m.
struct QuadMap {
  mpz_class b = 0;
  mpz_class c = 0;
  Dyadic gamma;  // -b/2
  Dyadic m;      // c - b^2/4 + b/2

  QuadMap() : QuadMap(0, 0) {}
  QuadMap(mpz_class b_, mpz_class c_);
  QuadMap(long b_, long c_) : QuadMap(mpz_class(b_), mpz_class(c_)) {}

  // Accepts exactly monic quadratics; throws std::invalid_argument otherwise.
  static QuadMap from_poly(const IntPoly& f);

  IntPoly poly() const { return IntPoly(std::vector<mpz_class>{c, b, 1}); }
  Dyadic operator()(const Dyadic& x) const { return x * x + Dyadic(b) * x + Dyadic(c); }
  mpz_class operator()(const mpz_class& x) const { return x * x + b * x + c; }
  bool gamma_integral() const { return gamma.is_integer(); }

  friend bool operator==(const QuadMap& a, const QuadMap& b) { return a.b == b.b && a.c == b.c; }
};

}  // namespace qdyn

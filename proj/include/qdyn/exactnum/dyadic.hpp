#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace qdyn {

/// Exact rational with a power-of-two denominator: num / 2^kexp.
///
/// Always kept canonical: either kexp == 0 or num is odd, and zero is (0, 0).
/// Critical points of monic quadratics over Z are half-integers, so every
/// value along a critical orbit lives here.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Dyadic(mpz_class num, unsigned long kexp = 0);

  static Dyadic half(const mpz_class& num) { return Dyadic(num, 1); }

  const mpz_class& num() const { return num_; }
  unsigned long kexp() const { return kexp_; }

  int sign() const { return sgn(num_); }
  bool is_zero() const { return sgn(num_) == 0; }
  bool is_integer() const { return kexp_ == 0; }

  Dyadic abs() const;
  mpq_class to_mpq() const;
  double to_double() const;

  // Multiply by 2^e (e may be negative).
  Dyadic shifted(long e) const;

  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& rhs);
  Dyadic& operator-=(const Dyadic& rhs);
  Dyadic& operator*=(const Dyadic& rhs);

  friend Dyadic operator+(Dyadic lhs, const Dyadic& rhs) { return lhs += rhs; }
  friend Dyadic operator-(Dyadic lhs, const Dyadic& rhs) { return lhs -= rhs; }
  friend Dyadic operator*(Dyadic lhs, const Dyadic& rhs) { return lhs *= rhs; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.kexp_ == b.kexp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  // "num" or "num/2^kexp" written out, e.g. "121/256".
  std::string str() const;

 private:
  void canonicalize();

  mpz_class num_ = 0;
  unsigned long kexp_ = 0;
};

}  // namespace qdyn

#include "qdyn/exactnum/dyadic.hpp"

#include <algorithm>

namespace qdyn {

Dyadic::Dyadic(mpz_class num, unsigned long kexp) : num_(std::move(num)), kexp_(kexp) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (sgn(num_) == 0) {
    kexp_ = 0;
    return;
  }
  if (kexp_ == 0) return;
  const unsigned long twos = mpz_scan1(num_.get_mpz_t(), 0);
  const unsigned long strip = std::min(twos, kexp_);
  if (strip > 0) {
    mpz_tdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), strip);
    kexp_ -= strip;
  }
}

Dyadic Dyadic::abs() const {
  Dyadic r = *this;
  r.num_ = ::abs(num_);
  return r;
}

mpq_class Dyadic::to_mpq() const {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, kexp_);
  mpq_class q(num_, den);
  q.canonicalize();
  return q;
}

double Dyadic::to_double() const { return to_mpq().get_d(); }

Dyadic Dyadic::shifted(long e) const {
  Dyadic r = *this;
  if (e >= 0) {
    const auto up = static_cast<unsigned long>(e);
    if (up <= r.kexp_) {
      r.kexp_ -= up;
    } else {
      mpz_mul_2exp(r.num_.get_mpz_t(), r.num_.get_mpz_t(), up - r.kexp_);
      r.kexp_ = 0;
    }
  } else {
    r.kexp_ += static_cast<unsigned long>(-e);
  }
  r.canonicalize();
  return r;
}

Dyadic Dyadic::operator-() const {
  Dyadic r = *this;
  r.num_ = -r.num_;
  return r;
}

Dyadic& Dyadic::operator+=(const Dyadic& rhs) {
  if (kexp_ == rhs.kexp_) {
    num_ += rhs.num_;
  } else if (kexp_ > rhs.kexp_) {
    mpz_class t;
    mpz_mul_2exp(t.get_mpz_t(), rhs.num_.get_mpz_t(), kexp_ - rhs.kexp_);
    num_ += t;
  } else {
    mpz_mul_2exp(num_.get_mpz_t(), num_.get_mpz_t(), rhs.kexp_ - kexp_);
    num_ += rhs.num_;
    kexp_ = rhs.kexp_;
  }
  canonicalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& rhs) { return *this += -rhs; }

Dyadic& Dyadic::operator*=(const Dyadic& rhs) {
  num_ *= rhs.num_;
  kexp_ += rhs.kexp_;
  canonicalize();
  return *this;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const Dyadic d = a - b;
  const int s = d.sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::str() const {
  if (kexp_ == 0) return num_.get_str();
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, kexp_);
  return num_.get_str() + "/" + den.get_str();
}

}  // namespace qdyn

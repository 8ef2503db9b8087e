#include "qdyn/polydyn/int_poly.hpp"

#include <stdexcept>
#include <utility>

namespace qdyn {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (const long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c}); }

IntPoly IntPoly::monomial(const mpz_class& c, unsigned deg) {
  std::vector<mpz_class> v(deg + 1, 0);
  v[deg] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Dyadic IntPoly::evaluate(const Dyadic& x) const {
  Dyadic v;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + Dyadic(*it);
  return v;
}

mpz_class IntPoly::evaluate(const mpz_class& x) const {
  mpz_class v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpz_class> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(d));
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  mpz_class g = content();
  if (leading() < 0) g = -g;
  std::vector<mpz_class> v = coeffs_;
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<mpz_class> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(), rhs.coeffs_[j].get_mpz_t());
    }
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const mpz_class& k) {
  for (auto& c : coeffs_) c *= k;
  trim();
  return *this;
}

std::string IntPoly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const mpz_class mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (i == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += "x";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

IntPoly pow(const IntPoly& p, unsigned e) {
  IntPoly result = IntPoly::constant(1);
  IntPoly base = p;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

IntPoly compose(const IntPoly& g, const IntPoly& f) {
  IntPoly out;
  const auto& gc = g.coeffs();
  for (auto it = gc.rbegin(); it != gc.rend(); ++it) {
    out *= f;
    out += IntPoly::constant(*it);
  }
  return out;
}

IntPoly iterate(const IntPoly& f, unsigned n) {
  IntPoly out = IntPoly::identity();
  for (unsigned i = 0; i < n; ++i) out = compose(f, out);
  return out;
}

IntPoly compose_iterate(const IntPoly& g, const IntPoly& f, unsigned n) {
  return compose(g, iterate(f, n));
}

namespace {

// Division with remainder; succeeds only if every quotient coefficient is
// integral.
std::optional<std::pair<IntPoly, IntPoly>> divrem_integral(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  std::vector<mpz_class> rem = a.coeffs();
  if (a.degree() < b.degree()) return std::make_pair(IntPoly{}, a);
  const int db = b.degree();
  std::vector<mpz_class> quo(static_cast<std::size_t>(a.degree() - db + 1), 0);
  const mpz_class& lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    mpz_class& top = rem[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    quo[static_cast<std::size_t>(i - db)] = q;
    for (int j = 0; j <= db; ++j) {
      mpz_submul(rem[static_cast<std::size_t>(i - db + j)].get_mpz_t(), q.get_mpz_t(),
                 b.coeffs()[static_cast<std::size_t>(j)].get_mpz_t());
    }
  }
  return std::make_pair(IntPoly(std::move(quo)), IntPoly(std::move(rem)));
}

// lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> rem = a.coeffs();
  const int db = b.degree();
  const mpz_class& lb = b.leading();
  int top = a.degree();
  for (int step = a.degree() - db; step >= 0; --step, --top) {
    const mpz_class t = rem[static_cast<std::size_t>(top)];
    for (auto& c : rem) c *= lb;
    for (int j = 0; j <= db; ++j) {
      mpz_submul(rem[static_cast<std::size_t>(top - db + j)].get_mpz_t(), t.get_mpz_t(),
                 b.coeffs()[static_cast<std::size_t>(j)].get_mpz_t());
    }
  }
  return IntPoly(std::move(rem));
}

}  // namespace

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
  const auto qr = divrem_integral(a, b);
  if (!qr || !qr->second.is_zero()) return std::nullopt;
  return qr->first;
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  IntPoly u = a.primitive_part();
  IntPoly v = b.primitive_part();
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    IntPoly r = pseudo_remainder(u, v);
    u = std::move(v);
    v = r.primitive_part();
  }
  return u.primitive_part();
}

bool is_squarefree(const IntPoly& h) {
  if (h.degree() <= 0) return true;
  return gcd(h, h.derivative()).degree() == 0;
}

mpz_class resultant(const IntPoly& h1, const IntPoly& h2) {
  if (h1.is_zero() || h2.is_zero()) return 0;
  const int m = h1.degree();
  const int n = h2.degree();
  if (m == 0 && n == 0) throw std::domain_error("resultant: both polynomials are constant");
  if (m == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), h1.leading().get_mpz_t(), static_cast<unsigned long>(n));
    return r;
  }
  if (n == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), h2.leading().get_mpz_t(), static_cast<unsigned long>(m));
    return r;
  }

  // Sylvester matrix: n shifted rows of h1, then m shifted rows of h2,
  // coefficients in descending order.
  const int size = m + n;
  std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(size),
                                        std::vector<mpz_class>(static_cast<std::size_t>(size), 0));
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j <= m; ++j) a[r][r + j] = h1.coeffs()[static_cast<std::size_t>(m - j)];
  }
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j <= n; ++j) a[n + r][r + j] = h2.coeffs()[static_cast<std::size_t>(n - j)];
  }

  // Bareiss fraction-free elimination.
  int sign = 1;
  mpz_class prev = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < size; ++r) {
        if (a[r][k] != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(t);
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[size - 1][size - 1];
}

}  // namespace qdyn

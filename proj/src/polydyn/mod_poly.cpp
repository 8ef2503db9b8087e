#include "qdyn/polydyn/mod_poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "qdyn/exactnum/arith.hpp"

namespace qdyn::modp {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly reduce(const IntPoly& h, std::uint64_t p) {
  Poly out;
  out.reserve(h.coeffs().size());
  for (const auto& c : h.coeffs()) out.push_back(mod_u64(c, p));
  trim(out);
  return out;
}

Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t x = i < a.size() ? a[i] : 0;
    const std::uint64_t y = i < b.size() ? b[i] : 0;
    const std::uint64_t s = x + y;
    out[i] = s >= p ? s - p : s;
  }
  trim(out);
  return out;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t x = i < a.size() ? a[i] : 0;
    const std::uint64_t y = i < b.size() ? b[i] : 0;
    out[i] = x >= y ? x - y : x + (p - y);
  }
  trim(out);
  return out;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::uint64_t s = out[i + j] + mul_mod(a[i], b[j], p);
      out[i + j] = s >= p ? s - p : s;
    }
  }
  trim(out);
  return out;
}

void divrem(const Poly& a, const Poly& b, std::uint64_t p, Poly& q, Poly& r) {
  if (b.empty()) throw std::domain_error("modp::divrem by zero");
  r = a;
  trim(r);
  const int db = degree(b);
  if (degree(r) < db) {
    q.clear();
    return;
  }
  q.assign(static_cast<std::size_t>(degree(r) - db + 1), 0);
  const std::uint64_t inv = inv_mod(b.back(), p);
  for (int i = degree(r); i >= db; --i) {
    const std::uint64_t t = mul_mod(r[static_cast<std::size_t>(i)], inv, p);
    q[static_cast<std::size_t>(i - db)] = t;
    if (t == 0) continue;
    for (int j = 0; j <= db; ++j) {
      std::uint64_t& slot = r[static_cast<std::size_t>(i - db + j)];
      const std::uint64_t d = mul_mod(t, b[static_cast<std::size_t>(j)], p);
      slot = slot >= d ? slot - d : slot + (p - d);
    }
  }
  trim(q);
  trim(r);
}

Poly rem(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly q, r;
  divrem(a, b, p, q, r);
  return r;
}

Poly monic(const Poly& a, std::uint64_t p) {
  if (a.empty()) return a;
  const std::uint64_t inv = inv_mod(a.back(), p);
  Poly out = a;
  for (auto& c : out) c = mul_mod(c, inv, p);
  return out;
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly derivative(const Poly& a, std::uint64_t p) {
  if (a.size() <= 1) return {};
  Poly out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = mul_mod(a[i], i % p, p);
  trim(out);
  return out;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly result{1};
  base = rem(base, m, p);
  result = rem(result, m, p);
  while (e > 0) {
    if (e & 1) result = rem(mul(result, base, p), m, p);
    e >>= 1;
    if (e > 0) base = rem(mul(base, base, p), m, p);
  }
  return result;
}

std::uint64_t evaluate(const Poly& a, std::uint64_t x, std::uint64_t p) {
  std::uint64_t v = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    v = mul_mod(v, x, p) + *it;
    if (v >= p) v -= p;
  }
  return v;
}

namespace {

// Splits a monic product of distinct linear factors (Cantor-Zassenhaus with
// deterministic shifts).
void split_linear(const Poly& h, std::uint64_t p, std::vector<std::uint64_t>& out) {
  const int d = degree(h);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(h[0] == 0 ? 0 : p - h[0]);
    return;
  }
  for (std::uint64_t a = 0; a < p; ++a) {
    // gcd((x + a)^((p-1)/2) - 1, h)
    Poly shift{a % p, 1};
    Poly t = powmod(shift, (p - 1) / 2, h, p);
    t = sub(t, Poly{1}, p);
    Poly g = gcd(h, t, p);
    const int dg = degree(g);
    if (dg > 0 && dg < d) {
      Poly q, r;
      divrem(h, g, p, q, r);
      split_linear(g, p, out);
      split_linear(monic(q, p), p, out);
      return;
    }
  }
  throw std::logic_error("modp::roots: failed to split");
}

}  // namespace

std::vector<std::uint64_t> roots(const Poly& h_in, std::uint64_t p) {
  Poly h = h_in;
  trim(h);
  std::vector<std::uint64_t> out;
  if (degree(h) <= 0) return out;
  if (p == 2) {
    for (std::uint64_t x = 0; x < 2; ++x) {
      if (evaluate(h, x, p) == 0) out.push_back(x);
    }
    return out;
  }
  h = monic(h, p);
  // gcd(x^p - x, h) collects the distinct linear factors.
  Poly xp = powmod(Poly{0, 1}, p, h, p);
  Poly g = gcd(h, sub(xp, Poly{0, 1}, p), p);
  split_linear(g, p, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> roots(const IntPoly& h, std::uint64_t p) { return roots(reduce(h, p), p); }

}  // namespace qdyn::modp

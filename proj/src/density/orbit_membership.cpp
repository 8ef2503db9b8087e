#include <map>
#include <stdexcept>
#include <unordered_set>

#include "qdyn/density/density.hpp"
#include "qdyn/error.hpp"
#include "qdyn/exactnum/arith.hpp"

namespace qdyn {

namespace {

constexpr std::size_t kMaxSettleSteps = std::size_t{1} << 20;

// |x| >= bound implies g(x) != 0 (Cauchy bound with |lead g| >= 1).
mpz_class root_bound(const IntPoly& g) {
  if (g.degree() < 1) return 0;
  mpz_class m = 0;
  for (int i = 0; i < g.degree(); ++i) m = std::max(m, mpz_class(abs(g.coeff(i))));
  return m + 1;
}

std::uint64_t eval_mod(const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = mul_mod(acc, x, p);
    acc = acc >= p - *it ? acc - (p - *it) : acc + *it;
  }
  return acc;
}

std::vector<std::uint64_t> reduce_coeffs(const IntPoly& h, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  for (const auto& c : h.coeffs()) out.push_back(mod_u64(c, p));
  return out;
}

}  // namespace

IntegerOrbit integer_orbit(const IntPoly& f, const mpz_class& a0, const IntPoly& g) {
  if (f.degree() < 1) throw std::invalid_argument("integer_orbit: deg f must be >= 1");
  if (g.is_zero()) throw std::invalid_argument("integer_orbit: g must be nonzero");
  const mpz_class R = root_bound(g);

  // escaped(x): from x on the orbit grows strictly in |.| and avoids roots of g.
  std::function<bool(const mpz_class&)> escaped;
  if (f.degree() >= 2) {
    mpz_class s = 0;
    for (int i = 0; i < f.degree(); ++i) s += abs(f.coeff(i));
    const mpz_class E = std::max(mpz_class(s + 2), R);
    escaped = [E](const mpz_class& x) { return abs(x) >= E; };
  } else {
    const mpz_class b = f.coeff(1);
    const mpz_class c = f.coeff(0);
    if (abs(b) >= 2) {
      const mpz_class E = std::max(mpz_class(abs(c) + 1), R);
      escaped = [E](const mpz_class& x) { return abs(x) >= E; };
    } else if (b == 1 && c != 0) {
      const mpz_class E = std::max(R, mpz_class(1));
      const bool up = c > 0;
      escaped = [E, up](const mpz_class& x) { return up ? x >= E : x <= -E; };
    } else {
      escaped = [](const mpz_class&) { return false; };  // identity, x -> -x + c: period <= 2
    }
  }

  IntegerOrbit out;
  std::map<mpz_class, std::size_t> seen;
  mpz_class x = a0;
  for (std::size_t n = 0; n < kMaxSettleSteps; ++n) {
    if (escaped(x)) {
      out.tail_start = x;
      return out;
    }
    if (auto it = seen.find(x); it != seen.end()) {
      out.finite = true;
      out.cycle_start = it->second;
      out.cycle_length = n - it->second;
      return out;
    }
    seen.emplace(x, n);
    out.values.push_back(x);
    x = f.evaluate(x);
  }
  throw unsupported_size("integer_orbit: orbit did not settle within 2^20 steps");
}

bool divides_orbit(const IntPoly& f, const mpz_class& a0, std::uint64_t p, const IntPoly& g) {
  if (p < 2) throw std::invalid_argument("divides_orbit: p must be prime");
  const IntegerOrbit orbit = integer_orbit(f, a0, g);
  for (const auto& v : orbit.values) {
    const mpz_class gv = g.evaluate(v);
    if (gv != 0 && mod_u64(gv, p) == 0) return true;
  }
  if (orbit.finite) return false;
  const auto fp = reduce_coeffs(f, p);
  const auto gp = reduce_coeffs(g, p);
  std::unordered_set<std::uint64_t> visited;
  std::uint64_t x = mod_u64(orbit.tail_start, p);
  while (visited.insert(x).second) {
    if (eval_mod(gp, x, p) == 0) return true;
    x = eval_mod(fp, x, p);
  }
  return false;
}

}  // namespace qdyn

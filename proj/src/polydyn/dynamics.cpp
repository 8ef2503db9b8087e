#include "qdyn/polydyn/dynamics.hpp"

#include <map>
#include <stdexcept>

namespace qdyn {

std::vector<Dyadic> forward_orbit(const QuadMap& f, const Dyadic& start, unsigned N) {
  std::vector<Dyadic> out;
  out.reserve(N + 1);
  out.push_back(start);
  for (unsigned n = 1; n <= N; ++n) out.push_back(f(out.back()));
  return out;
}

std::vector<Dyadic> critical_orbit(const QuadMap& f, const IntPoly& g, unsigned N) {
  if (N < 1) throw std::invalid_argument("critical_orbit: depth must be >= 1");
  std::vector<Dyadic> out;
  out.reserve(N);
  Dyadic x = f.gamma;
  for (unsigned n = 1; n <= N; ++n) {
    x = f(x);
    out.push_back(g.evaluate(x));
  }
  return out;
}

DiscChain disc_chain(const QuadMap& f, const IntPoly& g, unsigned N) {
  if (g.degree() < 1) throw std::invalid_argument("disc_chain: g must be nonconstant");
  DiscChain chain;
  mpz_class delta = resultant(g, g.derivative());
  chain.entries.push_back({0, delta});
  if (delta == 0) {
    chain.inseparable = true;
    return chain;
  }
  Dyadic x = f.gamma;
  const auto deg_g = static_cast<unsigned long>(g.degree());
  for (unsigned n = 1; n <= N; ++n) {
    x = f(x);
    const Dyadic v = g.evaluate(x);
    if (v.is_zero()) {
      chain.inseparable = true;
      chain.inseparable_level = n;
      return chain;
    }
    // 2^(2^n deg g) * v is an integer since kexp(v) <= 2^n deg g.
    const unsigned long twos = (1ul << n) * deg_g;
    const Dyadic scaled = v.shifted(static_cast<long>(twos));
    if (!scaled.is_integer()) throw std::logic_error("disc_chain: orbit denominator exceeds bound");
    delta = delta * delta * scaled.num();
    chain.entries.push_back({n, delta});
  }
  return chain;
}

FinitenessWitness is_critically_finite(const QuadMap& f) {
  FinitenessWitness w;
  w.orbit.push_back(f.gamma);
  if (!f.gamma_integral()) {
    // The denominator 2^(2^n) grows strictly, so no repeat is possible.
    w.finite = false;
    return w;
  }
  w.escape_bound = abs(f.b) + abs(f.c) + 2;
  std::map<mpz_class, std::size_t, bool (*)(const mpz_class&, const mpz_class&)> seen(
      [](const mpz_class& a, const mpz_class& b) { return cmp(a, b) < 0; });
  mpz_class x = f.gamma.num();
  seen.emplace(x, 0);
  while (true) {
    if (abs(x) >= w.escape_bound) {
      w.finite = false;
      return w;
    }
    x = f(x);
    const auto [it, inserted] = seen.emplace(x, w.orbit.size());
    if (!inserted) {
      w.finite = true;
      w.cycle_start = it->second;
      w.cycle_length = w.orbit.size() - it->second;
      return w;
    }
    w.orbit.emplace_back(x);
  }
}

QuadMap conjugate_by_shift(const QuadMap& f, const mpz_class& t) {
  return QuadMap(2 * t + f.b, t * t + f.b * t + f.c - t);
}

}  // namespace qdyn

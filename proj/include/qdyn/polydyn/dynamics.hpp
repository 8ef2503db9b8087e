#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "qdyn/exactnum/dyadic.hpp"
#include "qdyn/polydyn/int_poly.hpp"
#include "qdyn/polydyn/quad_map.hpp"

namespace qdyn {

// g(f^n(gamma)) for n = 1..N (index 0 holds n = 1).
std::vector<Dyadic> critical_orbit(const QuadMap& f, const IntPoly& g, unsigned N);

// f^n(gamma) for n = 0..N.
std::vector<Dyadic> forward_orbit(const QuadMap& f, const Dyadic& start, unsigned N);

struct DiscEntry {
  unsigned n;
  mpz_class delta;  // R(g o f^n, (g o f^n)')
};

struct DiscChain {
  std::vector<DiscEntry> entries;  // n = 0..N unless truncated
  bool inseparable = false;        // some g(f^n(gamma)) vanished
  unsigned inseparable_level = 0;
};

// Delta_n = Delta_{n-1}^2 * 2^(2^n deg g) * g(f^n(gamma)), Delta_0 = R(g, g').
DiscChain disc_chain(const QuadMap& f, const IntPoly& g, unsigned N);

struct FinitenessWitness {
  bool finite = false;
  std::vector<Dyadic> orbit;  // gamma, f(gamma), ... up to the repeat or escape
  std::optional<std::size_t> cycle_start;
  std::optional<std::size_t> cycle_length;
  mpz_class escape_bound;  // 0 when decided structurally
};

// Whether the critical point has a finite forward orbit.
FinitenessWitness is_critically_finite(const QuadMap& f);

// x -> f(x + t) - t.
QuadMap conjugate_by_shift(const QuadMap& f, const mpz_class& t);

}  // namespace qdyn

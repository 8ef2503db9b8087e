#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdyn/exactnum/dyadic.hpp"
#include "qdyn/polydyn/int_poly.hpp"
#include "qdyn/polydyn/quad_map.hpp"

namespace qdyn {

enum class Verdict { irreducible, reducible, unknown };

enum class EvidenceKind {
  trivial,               // degree <= 1
  discriminant,          // quadratic: discriminant square test
  square_criterion,      // previous level irreducible and orbit value nonsquare
  second_iterate,        // second-iterate condition on (-m +- sqrt(f^2(gamma)))/2
  mod_p,                 // irreducible modulo a witness prime
  kronecker_exhaustive,  // no factor up to half the degree
  kronecker_factor,      // explicit factor found
  repeated_factor,       // gcd with the derivative is nontrivial
  inherited,             // factors of the previous level composed with f
  none,
};

const char* to_string(Verdict v);
const char* to_string(EvidenceKind e);

struct LevelVerdict {
  unsigned n = 0;
  Verdict verdict = Verdict::unknown;
  EvidenceKind evidence = EvidenceKind::none;
  std::optional<Dyadic> square_test_value;
  std::optional<std::uint64_t> witness_prime;
  std::vector<IntPoly> factors;  // product equals the level polynomial when reducible
  std::string note;
};

enum class ModPVerdict { irreducible, reducible, degenerate };
const char* to_string(ModPVerdict v);

// Rabin's test on h mod p. Degenerate when p divides the leading coefficient
// or h mod p has a repeated factor.
ModPVerdict irreducible_mod_p(const IntPoly& h, std::uint64_t p);

// Irreducible iff prev_irreducible and g(f^n(gamma)) is not a square; unknown
// otherwise. Requires n >= 2.
LevelVerdict sqcrit_step(const QuadMap& f, const IntPoly& g, unsigned n, bool prev_irreducible);

// Generic certification of one polynomial: degree, discriminant, repeated
// factors, mod-p witnesses for p < 100, then exhaustive Kronecker search.
LevelVerdict certify_polynomial(const IntPoly& h, unsigned n);

// Verdicts for the levels that the square criterion cannot reach:
// levels 0, 1, 2 for g = x, levels 0, 1 otherwise.
std::vector<LevelVerdict> base_irreducibility(const QuadMap& f, const IntPoly& g);

}  // namespace qdyn

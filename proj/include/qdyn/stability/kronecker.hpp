#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qdyn/polydyn/int_poly.hpp"

namespace qdyn {

inline constexpr int kKroneckerMaxDegree = 8;

struct FactorPair {
  IntPoly factor;    // monic, degree <= the requested bound
  IntPoly cofactor;  // input / factor
};

// Exhaustive Kronecker search for a monic integer factor of degree at most
// `max_factor_degree` (and at most deg h / 2). A nullopt result proves no such
// factor exists. Requires h monic and squarefree; throws unsupported_size when
// deg h > 8 and std::invalid_argument when the other preconditions fail.
std::optional<FactorPair> kronecker_factor(const IntPoly& h, int max_factor_degree = 4);

// Splits a monic polynomial of degree <= 8 into monic irreducible factors,
// ascending by degree then coefficients. Repeated factors are listed with
// multiplicity.
std::vector<IntPoly> factor_completely(const IntPoly& h);

}  // namespace qdyn

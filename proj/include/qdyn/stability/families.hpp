#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "qdyn/polydyn/quad_map.hpp"

namespace qdyn {

// The four density-zero families:
//   1: x^2 - k x + k       (no excluded k)
//   2: x^2 + k x - 1       (k not in {0, 2})
//   3: x^2 + k             (k != -1)
//   4: x^2 - 2k x + k      (k not in {1, -1})
struct FamilyMatch {
  int family = 0;
  mpz_class k;
  bool excluded = false;
  // Family 1 also reads as x^2 + k' x - k' with k' = -k.
  std::optional<mpz_class> alt_k;
};

std::vector<FamilyMatch> family_classify(const QuadMap& f);

// Member of `family` with parameter k.
QuadMap family_member(int family, const mpz_class& k);

std::string family_form(int family);

}  // namespace qdyn

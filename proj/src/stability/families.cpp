#include "qdyn/stability/families.hpp"

#include <stdexcept>

namespace qdyn {

std::vector<FamilyMatch> family_classify(const QuadMap& f) {
  std::vector<FamilyMatch> out;
  if (f.c == -f.b) {
    FamilyMatch fm{1, f.c, false, -f.c};
    out.push_back(fm);
  }
  if (f.c == -1) {
    out.push_back({2, f.b, f.b == 0 || f.b == 2, std::nullopt});
  }
  if (f.b == 0) {
    out.push_back({3, f.c, f.c == -1, std::nullopt});
  }
  if (mpz_even_p(f.b.get_mpz_t()) && 2 * f.c == -f.b) {
    out.push_back({4, f.c, f.c == 1 || f.c == -1, std::nullopt});
  }
  return out;
}

QuadMap family_member(int family, const mpz_class& k) {
  switch (family) {
    case 1: return QuadMap(-k, k);
    case 2: return QuadMap(k, mpz_class(-1));
    case 3: return QuadMap(mpz_class(0), k);
    case 4: return QuadMap(-2 * k, k);
    default: throw std::invalid_argument("family must be 1..4");
  }
}

std::string family_form(int family) {
  switch (family) {
    case 1: return "x^2 - k*x + k";
    case 2: return "x^2 + k*x - 1";
    case 3: return "x^2 + k";
    case 4: return "x^2 - 2*k*x + k";
    default: throw std::invalid_argument("family must be 1..4");
  }
}

}  // namespace qdyn

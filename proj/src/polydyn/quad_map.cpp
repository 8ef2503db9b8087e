#include "qdyn/polydyn/quad_map.hpp"

#include <stdexcept>
#include <utility>

namespace qdyn {

QuadMap::QuadMap(mpz_class b_, mpz_class c_) : b(std::move(b_)), c(std::move(c_)) {
  gamma = Dyadic(-b, 1);
  m = Dyadic(c) - gamma * gamma - gamma;
}

QuadMap QuadMap::from_poly(const IntPoly& f) {
  if (f.degree() != 2 || !f.is_monic()) throw std::invalid_argument("expected a monic quadratic, got " + f.str());
  return QuadMap(f.coeff(1), f.coeff(0));
}

}  // namespace qdyn

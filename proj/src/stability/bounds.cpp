#include "qdyn/stability/bounds.hpp"

#include <stdexcept>

namespace qdyn {

namespace {

Dyadic j_power(unsigned j, unsigned n) {
  // j^(2^(n-1)) for j in {1, 2}
  if (j == 1) return 1;
  return Dyadic(1).shifted(static_cast<long>(1ul << (n - 1)));
}

unsigned j_of(const QuadMap& f) { return f.gamma_integral() ? 1 : 2; }

}  // namespace

bool long_bound_check(const QuadMap& f) {
  if ((f.gamma + f.m).is_zero()) return false;
  const bool integral = f.gamma_integral();
  const Dyadic k = integral ? 1 : 6;
  const Dyadic c = integral ? 1 : 9;
  const Dyadic t = f.m.abs() - k;
  if (t.sign() <= 0) return false;
  return t * t > c * (f.gamma.abs() + Dyadic(1));
}

bool prince_check(const QuadMap& f, unsigned n) {
  if (n < 3) throw std::invalid_argument("prince_check: level must be >= 3");
  Dyadic x = f.gamma;
  for (unsigned i = 0; i + 1 < n; ++i) x = f(x);
  const Dyadic lhs = j_power(j_of(f), n) * (f.gamma + f.m).abs();
  const Dyadic rhs = Dyadic(2) * (x - f.gamma).abs() - Dyadic(1);
  return lhs < rhs;
}

bool thingtoshow_holds(const Dyadic& m, unsigned j, unsigned n) {
  if (n < 1 || (j != 1 && j != 2)) throw std::invalid_argument("thingtoshow_holds: need n >= 1, j in {1, 2}");
  Dyadic x = 0;
  for (unsigned i = 0; i + 1 < n; ++i) x = x * x + m;
  return x.abs() > Dyadic(1) + j_power(j, n);
}

bool thingtoshow_check(const QuadMap& f, unsigned n) {
  if (n < 4) throw std::invalid_argument("thingtoshow_check: level must be >= 4");
  return thingtoshow_holds(f.m, j_of(f), n);
}

}  // namespace qdyn

#pragma once

#include <cstdint>
#include <vector>

#include "qdyn/polydyn/int_poly.hpp"

// Dense polynomials over F_p, p < 2^63, coefficients ascending and trimmed.
namespace qdyn::modp {

using Poly = std::vector<std::uint64_t>;

Poly reduce(const IntPoly& h, std::uint64_t p);
void trim(Poly& a);
int degree(const Poly& a);

Poly add(const Poly& a, const Poly& b, std::uint64_t p);
Poly sub(const Poly& a, const Poly& b, std::uint64_t p);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
// Quotient and remainder; b must be nonzero.
void divrem(const Poly& a, const Poly& b, std::uint64_t p, Poly& q, Poly& r);
Poly rem(const Poly& a, const Poly& b, std::uint64_t p);
Poly monic(const Poly& a, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);
Poly derivative(const Poly& a, std::uint64_t p);
// base^e mod m.
Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p);
std::uint64_t evaluate(const Poly& a, std::uint64_t x, std::uint64_t p);

// Distinct roots in F_p, ascending.
std::vector<std::uint64_t> roots(const IntPoly& h, std::uint64_t p);
std::vector<std::uint64_t> roots(const Poly& h, std::uint64_t p);

}  // namespace qdyn::modp

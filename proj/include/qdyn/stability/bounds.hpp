#pragma once

#include "qdyn/exactnum/dyadic.hpp"
#include "qdyn/polydyn/quad_map.hpp"

namespace qdyn {

// |m| > 6 + 3 sqrt(|gamma| + 1), or |m| > 1 + sqrt(|gamma| + 1) when gamma is
// integral. False for square maps (gamma + m == 0). Exact comparison.
bool long_bound_check(const QuadMap& f);

// j^(2^(n-1)) |gamma + m| < 2 |f^(n-1)(gamma) - gamma| - 1 with j = 1 for
// integral gamma, 2 otherwise. Requires n >= 3.
bool prince_check(const QuadMap& f, unsigned n);

// |f_m^(n-1)(0)| > 1 + j^(2^(n-1)) where f_m = x^2 + m. Requires n >= 4.
bool thingtoshow_check(const QuadMap& f, unsigned n);

// The same inequality for arbitrary m and j, with no hypothesis on m.
bool thingtoshow_holds(const Dyadic& m, unsigned j, unsigned n);

}  // namespace qdyn

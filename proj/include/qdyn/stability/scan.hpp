#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "qdyn/polydyn/int_poly.hpp"
#include "qdyn/polydyn/quad_map.hpp"
#include "qdyn/stability/irreducibility.hpp"

namespace qdyn {

enum class StabilityOverall { stable_to_depth, unstable, inconclusive };
const char* to_string(StabilityOverall s);

struct StabilityReport {
  std::vector<LevelVerdict> levels;  // n = 0..N
  StabilityOverall overall = StabilityOverall::inconclusive;
  unsigned certified_depth = 0;  // largest n with levels 0..n all irreducible
  bool level0_certified = false;
};

// Verdicts for g o f^n, n = 0..N. Base levels come from base_irreducibility,
// later levels from the square criterion with mod-p and Kronecker fallbacks.
StabilityReport stability_scan(const QuadMap& f, const IntPoly& g, unsigned N);

enum class EventualStatus { eventually_stable_witness, not_eventually_stable, inconclusive };
const char* to_string(EventualStatus s);

struct EventualStabilityReport {
  EventualStatus status = EventualStatus::inconclusive;
  std::vector<mpz_class> zero_cycle;  // orbit of 0 back to 0 when periodic
  std::optional<unsigned> m;          // unfolding depth of the witness
  std::vector<IntPoly> factors;       // irreducible factors of f^m
  std::vector<StabilityReport> factor_reports;
};

// Searches m = 0..max_unfold for a factorization of f^m into pieces that are
// each certified f-stable to `depth`. Requires max_unfold <= 3.
EventualStabilityReport eventual_stability_scan(const QuadMap& f, unsigned max_unfold, unsigned depth);

}  // namespace qdyn

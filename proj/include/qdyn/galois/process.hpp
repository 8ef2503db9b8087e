#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "qdyn/galois/tree_aut.hpp"

namespace qdyn {

// P(X_n > 0) over the full group, by enumeration (n <= 4).
mpq_class qn_enumerate(unsigned n);

// P(X_n > 0) from q_n = q_{n-1} - q_{n-1}^2 / 2, q_0 = 1.
mpq_class qn_recursion(unsigned n);

// Recursion for n > 4, enumeration cross-checked against it otherwise.
mpq_class qn_exact(unsigned n);

// Proportion of elements with a fixed leaf in the model group where every
// level is {identity, swap all}. Enumerates the 2^n elements for n <= 10 and
// returns 2^-n beyond.
mpq_class exceptional_fixed_fraction(unsigned n);

// E[X_k | X_1..X_{k-1} = history] over the full group at height k = |history| + 1 <= 4.
mpq_class conditional_expectation(const std::vector<std::size_t>& history);

// Max over levels k <= n and realizable histories of |E[X_k | history] - X_{k-1}|.
mpq_class martingale_check(unsigned n);

// (1/#H) sum_{tau in H} #{children v of v0 : (sigma tau)(v) = v} with H the
// pointwise stabilizer of level n-1. sigma has height n and must fix v0.
// Throws std::invalid_argument when sigma moves v0.
mpq_class stabav_check(unsigned n, std::size_t v0, const TreeAut& sigma);

enum class LevelKind { maximal, order2 };

// P(X_n > 0) when level m (1..n) is either the full (C2)^(2^(m-1)) layer or the
// diagonal order-2 subgroup. mask[m-1] describes level m.
mpq_class qn_masked(const std::vector<LevelKind>& mask);

struct LevelEstimate {
  unsigned n;
  double estimate;  // fraction of trials with X_n > 0
  double stderr_;
  std::uint64_t hits;
};

struct ProcessStats {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<LevelEstimate> levels;  // n = 1..n_max
};

// Monte Carlo over the masked tower. Each trial draws from its own generator
// seeded from (seed, trial index), so results do not depend on `threads`.
ProcessStats sample_process(const std::vector<LevelKind>& mask, std::uint64_t trials, std::uint64_t seed,
                            unsigned threads = 1);

}  // namespace qdyn

#include "qdyn/galois/process.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

#include "qdyn/error.hpp"

namespace qdyn {

mpq_class qn_enumerate(unsigned n) {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for_each_aut(n, [&](const TreeAut& t) {
    ++total;
    if (t.fixed_leaves() > 0) ++hits;
  });
  mpq_class q(static_cast<unsigned long>(hits), static_cast<unsigned long>(total));
  q.canonicalize();
  return q;
}

mpq_class qn_recursion(unsigned n) {
  mpq_class q = 1;
  for (unsigned i = 0; i < n; ++i) q = q - q * q / 2;
  q.canonicalize();
  return q;
}

mpq_class qn_exact(unsigned n) {
  const mpq_class rec = qn_recursion(n);
  if (n <= kMaxEnumerationHeight && qn_enumerate(n) != rec) {
    throw std::logic_error("qn_exact: enumeration disagrees with recursion");
  }
  return rec;
}

mpq_class exceptional_fixed_fraction(unsigned n) {
  if (n < 1) throw std::invalid_argument("exceptional_fixed_fraction: n must be >= 1");
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, n);
  mpq_class formula(1, den);
  if (n > 10) return formula;
  // Element e in {0,1}^n swaps every vertex pair at level l when bit l is set.
  std::uint64_t hits = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t e = 0; e < count; ++e) {
    TreeAut t(n);
    for (unsigned l = 0; l < n; ++l) {
      const bool bit = ((e >> l) & 1u) != 0;
      for (std::size_t v = 0; v < (std::size_t{1} << l); ++v) t.set_label(l, v, bit);
    }
    if (t.fixed_leaves() > 0) ++hits;
  }
  mpq_class q(static_cast<unsigned long>(hits), static_cast<unsigned long>(count));
  q.canonicalize();
  if (q != formula) throw std::logic_error("exceptional_fixed_fraction: enumeration disagrees with 2^-n");
  return q;
}

mpq_class conditional_expectation(const std::vector<std::size_t>& history) {
  const auto k = static_cast<unsigned>(history.size() + 1);
  mpz_class sum = 0;
  unsigned long count = 0;
  for_each_aut(k, [&](const TreeAut& t) {
    const auto prof = t.fixed_profile();
    for (unsigned i = 0; i + 1 < k; ++i) {
      if (prof[i + 1] != history[i]) return;
    }
    sum += static_cast<unsigned long>(prof[k]);
    ++count;
  });
  if (count == 0) throw std::invalid_argument("conditional_expectation: history not realizable");
  mpq_class e(sum, count);
  e.canonicalize();
  return e;
}

mpq_class martingale_check(unsigned n) {
  if (n < 1) throw std::invalid_argument("martingale_check: n must be >= 1");
  // history prefix -> (sum of next X, count), per level
  std::vector<std::map<std::vector<std::size_t>, std::pair<unsigned long, unsigned long>>> groups(n + 1);
  for_each_aut(n, [&](const TreeAut& t) {
    const auto prof = t.fixed_profile();
    for (unsigned k = 1; k <= n; ++k) {
      std::vector<std::size_t> prefix(prof.begin(), prof.begin() + k);
      auto& slot = groups[k][prefix];
      slot.first += prof[k];
      slot.second += 1;
    }
  });
  mpq_class worst = 0;
  for (unsigned k = 1; k <= n; ++k) {
    for (const auto& [prefix, acc] : groups[k]) {
      mpq_class mean(acc.first, acc.second);
      mean.canonicalize();
      mpq_class dev = abs(mean - mpq_class(static_cast<unsigned long>(prefix.back())));
      if (dev > worst) worst = dev;
    }
  }
  return worst;
}

mpq_class stabav_check(unsigned n, std::size_t v0, const TreeAut& sigma) {
  if (n < 1 || sigma.height() != n) throw std::invalid_argument("stabav_check: sigma must have height n >= 1");
  if (n > 5) throw unsupported_size("stabav_check: height above 5");
  if (v0 >= (std::size_t{1} << (n - 1))) throw std::invalid_argument("stabav_check: v0 out of range");
  if (sigma.image(n - 1, v0) != v0) throw std::invalid_argument("stabav_check: sigma must fix v0");
  const std::size_t width = std::size_t{1} << (n - 1);
  const std::uint64_t count = std::uint64_t{1} << width;
  unsigned long fixed_total = 0;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    TreeAut tau(n);
    for (std::size_t v = 0; v < width; ++v) tau.set_label(n - 1, v, ((bits >> v) & 1u) != 0);
    const TreeAut st = compose(sigma, tau);
    for (std::size_t c = 2 * v0; c <= 2 * v0 + 1; ++c) {
      if (st.image(n, c) == c) ++fixed_total;
    }
  }
  mpq_class avg(fixed_total, static_cast<unsigned long>(count));
  avg.canonicalize();
  return avg;
}

mpq_class qn_masked(const std::vector<LevelKind>& mask) {
  // s = P(a fixed vertex has a fixed descendant at the bottom), built upward.
  // Order-2 levels share one bit across the whole level; it is factored out.
  mpq_class s = 1;
  unsigned order2 = 0;
  for (auto it = mask.rbegin(); it != mask.rend(); ++it) {
    const mpq_class miss = (1 - s) * (1 - s);
    if (*it == LevelKind::maximal) {
      s = (1 - miss) / 2;
    } else {
      s = 1 - miss;
      ++order2;
    }
    s.canonicalize();
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, order2);
  mpq_class out = s / den;
  out.canonicalize();
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Count of zero bits among `k` uniform random bits.
std::uint64_t zero_bits(std::mt19937_64& rng, std::uint64_t k) {
  if (k > 4096) return std::binomial_distribution<std::uint64_t>(k, 0.5)(rng);
  std::uint64_t zeros = 0;
  while (k >= 64) {
    zeros += 64 - static_cast<std::uint64_t>(std::popcount(rng()));
    k -= 64;
  }
  if (k > 0) {
    const std::uint64_t word = rng() & ((std::uint64_t{1} << k) - 1);
    zeros += k - static_cast<std::uint64_t>(std::popcount(word));
  }
  return zeros;
}

void run_trials(const std::vector<LevelKind>& mask, std::uint64_t seed, std::uint64_t begin, std::uint64_t end,
                std::vector<std::uint64_t>& hits) {
  const std::uint64_t stream = splitmix64(seed);
  for (std::uint64_t trial = begin; trial < end; ++trial) {
    std::mt19937_64 rng(splitmix64(stream ^ splitmix64(trial)));
    std::uint64_t x = 1;
    for (std::size_t m = 0; m < mask.size() && x > 0; ++m) {
      if (mask[m] == LevelKind::maximal) {
        x = 2 * zero_bits(rng, x);
      } else {
        x = (rng() & 1u) == 0 ? 2 * x : 0;
      }
      if (x > 0) ++hits[m];
    }
  }
}

}  // namespace

ProcessStats sample_process(const std::vector<LevelKind>& mask, std::uint64_t trials, std::uint64_t seed,
                            unsigned threads) {
  if (trials < 1) throw std::invalid_argument("sample_process: trials must be >= 1");
  if (mask.size() > 62) throw unsupported_size("sample_process: height above 62");
  threads = std::max(1u, threads);
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(mask.size(), 0));
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (trials + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = std::min(trials, t * chunk);
    const std::uint64_t end = std::min(trials, begin + chunk);
    if (threads == 1) {
      run_trials(mask, seed, begin, end, partial[t]);
    } else {
      pool.emplace_back(run_trials, std::cref(mask), seed, begin, end, std::ref(partial[t]));
    }
  }
  for (auto& th : pool) th.join();

  ProcessStats stats;
  stats.trials = trials;
  stats.seed = seed;
  for (std::size_t m = 0; m < mask.size(); ++m) {
    std::uint64_t h = 0;
    for (const auto& p : partial) h += p[m];
    const double est = static_cast<double>(h) / static_cast<double>(trials);
    const double se = std::sqrt(est * (1.0 - est) / static_cast<double>(trials));
    stats.levels.push_back({static_cast<unsigned>(m + 1), est, se, h});
  }
  return stats;
}

}  // namespace qdyn

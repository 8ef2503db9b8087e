#include <stdexcept>

#include "qdyn/simd/orbit_kernel.hpp"

#if defined(__x86_64__)
#include <immintrin.h>
#define QDYN_HAVE_AVX2_PATH 1
#endif

namespace qdyn::simd {

#ifdef QDYN_HAVE_AVX2_PATH

namespace {

// Residues live in doubles. For t < 2^53, q = round(t / p) via the 2^52
// trick leaves t - q p in (-p, p); the FMA computes it exactly, and one
// conditional add brings it into [0, p).
//
// Each step is a long dependent chain, so kVecs independent vectors are kept
// in flight. A slot whose walk ends is refilled from the queue at once, which
// also keeps short walks from idling behind long ones.
constexpr int kVecs = 4;
constexpr int kSlots = 4 * kVecs;

__attribute__((target("avx2,fma"))) inline __m256d reduce(__m256d t, __m256d p, __m256d pinv) {
  const __m256d magic = _mm256_set1_pd(4503599627370496.0);  // 2^52
  const __m256d q = _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(t, pinv), magic), magic);
  const __m256d r = _mm256_fnmadd_pd(q, p, t);
  return _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ), p));
}

struct Block {
  explicit Block(const OrbitLanes& lanes)
      : in(lanes),
        fc(static_cast<std::size_t>(lanes.f_terms) * kSlots, 0.0),
        gc(static_cast<std::size_t>(lanes.g_terms) * kSlots, 0.0) {}

  const OrbitLanes& in;
  alignas(32) double x[kSlots] = {};
  alignas(32) double tort[kSlots] = {};
  alignas(32) double lam[kSlots] = {};
  alignas(32) double power[kSlots] = {};
  alignas(32) double p[kSlots] = {};
  alignas(32) double pinv[kSlots] = {};
  std::vector<double> fc;  // term i of slot s at [i * kSlots + s]
  std::vector<double> gc;
  std::size_t job[kSlots] = {};
  std::uint64_t start_iter[kSlots] = {};
  bool active[kSlots] = {};
  bool pending[kSlots] = {};
  OrbitWalk walk[kSlots];

  bool hit_at(int s, std::uint64_t v) const {
    if (in.g_terms == 0) return v == 0;
    const auto q = static_cast<std::uint64_t>(p[s]);
    auto acc = static_cast<std::uint64_t>(gc[(in.g_terms - 1) * kSlots + s]);
    for (unsigned i = in.g_terms - 1; i-- > 0;) acc = (acc * v + static_cast<std::uint64_t>(gc[i * kSlots + s])) % q;
    return acc == 0;
  }

  // Loads lane j into slot s. Returns false when the walk ends at its start.
  bool load(int s, std::size_t j, std::uint64_t iter) {
    const std::uint32_t mod = in.modulus[j];
    job[s] = j;
    p[s] = mod;
    pinv[s] = 1.0 / mod;
    for (unsigned i = 0; i < in.f_terms; ++i) fc[i * kSlots + s] = in.f_coeffs[i * in.lanes + j];
    for (unsigned i = 0; i < in.g_terms; ++i) gc[i * kSlots + s] = in.g_coeffs[i * in.lanes + j];
    const std::uint64_t start = in.start[j] % mod;
    x[s] = static_cast<double>(start);
    tort[s] = x[s];
    lam[s] = 0.0;  // raised to 1 before the slot's first step
    power[s] = in.purely_periodic[j] != 0 ? __builtin_inf() : 1.0;
    start_iter[s] = iter;
    walk[s] = OrbitWalk{};
    pending[s] = true;
    active[s] = true;
    if (hit_at(s, start)) {
      walk[s].first_hit = 0;
      pending[s] = false;
      if (in.stop_at_first_hit) {
        active[s] = false;
        return false;
      }
    }
    return true;
  }
};

__attribute__((target("avx2,fma"))) void run_block(const OrbitLanes& in, const std::vector<std::size_t>& jobs,
                                                   std::vector<OrbitWalk>& out) {
  Block b(in);
  std::size_t next = 0;
  int live = 0;
  const auto refill = [&](int s, std::uint64_t iter) {
    while (next < jobs.size()) {
      const std::size_t j = jobs[next++];
      if (b.load(s, j, iter)) {
        ++live;
        return;
      }
      out[j] = b.walk[s];
    }
    b.active[s] = false;
    b.p[s] = 1.0;  // idle slot: harmless arithmetic
    b.pinv[s] = 1.0;
  };
  for (int s = 0; s < kSlots; ++s) refill(s, 0);
  for (int s = 0; s < kSlots; ++s) b.lam[s] += 1.0;

  __m256d x[kVecs], t[kVecs], l[kVecs], pw[kVecs], p[kVecs], pinv[kVecs];
  for (int v = 0; v < kVecs; ++v) {
    x[v] = _mm256_load_pd(b.x + 4 * v);
    t[v] = _mm256_load_pd(b.tort + 4 * v);
    l[v] = _mm256_load_pd(b.lam + 4 * v);
    pw[v] = _mm256_load_pd(b.power + 4 * v);
    p[v] = _mm256_load_pd(b.p + 4 * v);
    pinv[v] = _mm256_load_pd(b.pinv + 4 * v);
  }
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const unsigned ft = in.f_terms;
  const unsigned gt = in.g_terms;
  unsigned live_mask = 0;
  unsigned pending_mask = 0;
  for (int s = 0; s < kSlots; ++s) {
    live_mask |= static_cast<unsigned>(b.active[s]) << s;
    pending_mask |= static_cast<unsigned>(b.pending[s]) << s;
  }

  std::uint64_t iter = 0;
  while (live > 0) {
    ++iter;
    __m256d acc[kVecs];
    for (int v = 0; v < kVecs; ++v) acc[v] = _mm256_loadu_pd(&b.fc[(ft - 1) * kSlots + 4 * v]);
    for (unsigned i = ft - 1; i-- > 0;) {
      for (int v = 0; v < kVecs; ++v) {
        const __m256d c = _mm256_loadu_pd(&b.fc[i * kSlots + 4 * v]);
        acc[v] = reduce(_mm256_add_pd(_mm256_mul_pd(acc[v], x[v]), c), p[v], pinv[v]);
      }
    }
    unsigned eq = 0, hit = 0, due = 0;
    for (int v = 0; v < kVecs; ++v) {
      x[v] = acc[v];
      __m256d gv = x[v];
      if (gt > 0) {
        gv = _mm256_loadu_pd(&b.gc[(gt - 1) * kSlots + 4 * v]);
        for (unsigned i = gt - 1; i-- > 0;) {
          const __m256d c = _mm256_loadu_pd(&b.gc[i * kSlots + 4 * v]);
          gv = reduce(_mm256_add_pd(_mm256_mul_pd(gv, x[v]), c), p[v], pinv[v]);
        }
      }
      const auto shift = static_cast<unsigned>(4 * v);
      eq |= static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(x[v], t[v], _CMP_EQ_OQ))) << shift;
      hit |= static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(gv, zero, _CMP_EQ_OQ))) << shift;
      due |= static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(l[v], pw[v], _CMP_EQ_OQ))) << shift;
    }
    const unsigned events = (eq | (hit & pending_mask) | due) & live_mask;
    if (events != 0) {
      for (int v = 0; v < kVecs; ++v) {
        _mm256_store_pd(b.x + 4 * v, x[v]);
        _mm256_store_pd(b.tort + 4 * v, t[v]);
        _mm256_store_pd(b.lam + 4 * v, l[v]);
        _mm256_store_pd(b.power + 4 * v, pw[v]);
      }
      for (int s = 0; s < kSlots; ++s) {
        const unsigned bit = 1u << s;
        if ((events & bit) == 0) continue;
        bool done = false;
        if ((eq & bit) != 0) {
          b.walk[s].cycle_len = static_cast<std::uint64_t>(b.lam[s]);
          done = true;
        } else {
          if ((hit & pending_mask & bit) != 0) {
            b.walk[s].first_hit = static_cast<std::int64_t>(iter - b.start_iter[s]);
            b.pending[s] = false;
            done = in.stop_at_first_hit;
          }
          if (!done && (due & bit) != 0) {
            b.tort[s] = b.x[s];
            b.power[s] *= 2.0;
            b.lam[s] = 0.0;
          }
        }
        if (done) {
          b.walk[s].steps = iter - b.start_iter[s];
          out[b.job[s]] = b.walk[s];
          --live;
          refill(s, iter);
        }
      }
      live_mask = 0;
      pending_mask = 0;
      for (int s = 0; s < kSlots; ++s) {
        live_mask |= static_cast<unsigned>(b.active[s]) << s;
        pending_mask |= static_cast<unsigned>(b.pending[s]) << s;
      }
      for (int v = 0; v < kVecs; ++v) {
        x[v] = _mm256_load_pd(b.x + 4 * v);
        t[v] = _mm256_load_pd(b.tort + 4 * v);
        l[v] = _mm256_load_pd(b.lam + 4 * v);
        pw[v] = _mm256_load_pd(b.power + 4 * v);
        p[v] = _mm256_load_pd(b.p + 4 * v);
        pinv[v] = _mm256_load_pd(b.pinv + 4 * v);
      }
    }
    for (int v = 0; v < kVecs; ++v) l[v] = _mm256_add_pd(l[v], one);
  }
}

}  // namespace

void walk_orbits_avx2(const OrbitLanes& in, std::vector<OrbitWalk>& out) {
  if (detected_isa() != Isa::avx2) throw std::runtime_error("walk_orbits_avx2: CPU lacks AVX2/FMA");
  if (in.f_terms == 0) throw std::invalid_argument("walk_orbits_avx2: f has no terms");
  out.resize(in.lanes);
  std::vector<std::size_t> jobs;
  for (std::size_t j = 0; j < in.lanes; ++j) {
    if (in.modulus[j] >= kMaxSimdModulus) {
      out[j] = walk_lane_scalar(in, j);
    } else {
      jobs.push_back(j);
    }
  }
  if (!jobs.empty()) run_block(in, jobs, out);
}

#else

void walk_orbits_avx2(const OrbitLanes&, std::vector<OrbitWalk>&) {
  throw std::runtime_error("walk_orbits_avx2: not built for this architecture");
}

#endif

}  // namespace qdyn::simd

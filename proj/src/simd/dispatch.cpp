#include <atomic>
#include <cstdlib>
#include <cstring>

#include "qdyn/simd/orbit_kernel.hpp"

namespace qdyn::simd {

namespace {

Isa probe() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
  return Isa::scalar;
}

Isa initial() {
  const char* env = std::getenv("QDYN_ISA");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial()};
  return isa;
}

}  // namespace

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
  active().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void OrbitLanes::resize(std::size_t n, unsigned f_terms_, unsigned g_terms_) {
  lanes = n;
  f_terms = f_terms_;
  g_terms = g_terms_;
  modulus.assign(n, 0);
  start.assign(n, 0);
  f_coeffs.assign(n * f_terms_, 0);
  g_coeffs.assign(n * g_terms_, 0);
  purely_periodic.assign(n, 0);
}

void walk_orbits(const OrbitLanes& in, std::vector<OrbitWalk>& out) {
  if (active_isa() == Isa::avx2) {
    walk_orbits_avx2(in, out);
  } else {
    walk_orbits_scalar(in, out);
  }
}

}  // namespace qdyn::simd

#include <limits>

#include "qdyn/simd/orbit_kernel.hpp"

namespace qdyn::simd {

namespace {

std::uint64_t horner(const std::vector<std::uint32_t>& coeffs, unsigned terms, std::size_t lanes, std::size_t lane,
                     std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = coeffs[(terms - 1) * lanes + lane];
  for (unsigned i = terms - 1; i-- > 0;) acc = (acc * x + coeffs[i * lanes + lane]) % p;
  return acc;
}

}  // namespace

OrbitWalk walk_lane_scalar(const OrbitLanes& in, std::size_t lane) {
  const std::uint64_t p = in.modulus[lane];
  const auto f = [&](std::uint64_t x) { return horner(in.f_coeffs, in.f_terms, in.lanes, lane, x, p); };
  const auto hit = [&](std::uint64_t x) {
    return in.g_terms == 0 ? x == 0 : horner(in.g_coeffs, in.g_terms, in.lanes, lane, x, p) == 0;
  };

  OrbitWalk w;
  std::uint64_t x = in.start[lane] % p;
  if (hit(x)) {
    w.first_hit = 0;
    if (in.stop_at_first_hit) return w;
  }
  // Brent cycle detection. A purely periodic lane keeps its start as the
  // checkpoint forever, so lam counts steps and detection means a full return.
  std::uint64_t tort = x;
  std::uint64_t power = in.purely_periodic[lane] != 0 ? std::numeric_limits<std::uint64_t>::max() : 1;
  std::uint64_t lam = 1;
  for (;;) {
    x = f(x);
    ++w.steps;
    if (x == tort) {
      w.cycle_len = lam;
      return w;
    }
    if (w.first_hit < 0 && hit(x)) {
      w.first_hit = static_cast<std::int64_t>(w.steps);
      if (in.stop_at_first_hit) return w;
    }
    if (lam == power) {
      tort = x;
      power *= 2;
      lam = 0;
    }
    ++lam;
  }
}

void walk_orbits_scalar(const OrbitLanes& in, std::vector<OrbitWalk>& out) {
  out.resize(in.lanes);
  for (std::size_t j = 0; j < in.lanes; ++j) out[j] = walk_lane_scalar(in, j);
}

}  // namespace qdyn::simd

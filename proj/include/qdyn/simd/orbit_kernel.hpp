#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qdyn::simd {

enum class Isa { scalar, avx2 };

Isa detected_isa();
Isa active_isa();
// Forces a path; requesting an unsupported ISA falls back to scalar. The
// vector path needs AVX2 and FMA.
void set_isa(Isa isa);
const char* isa_name(Isa isa);

// Lanes at or above this modulus always take the scalar path (the vector path
// relies on products below 2^53 being exact in doubles).
inline constexpr std::uint32_t kMaxSimdModulus = 1u << 26;

// Independent orbit walks x -> f(x) mod p_j, one per lane. Coefficients are
// stored term-major: coefficient i of lane j at [i * lanes + j], already
// reduced mod p_j, ascending by degree.
struct OrbitLanes {
  std::size_t lanes = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint32_t> start;
  unsigned f_terms = 0;
  std::vector<std::uint32_t> f_coeffs;
  // g_terms == 0 means a hit is x == 0; otherwise a hit is g(x) == 0.
  unsigned g_terms = 0;
  std::vector<std::uint32_t> g_coeffs;
  // Lane whose map is a bijection mod p: the walk returns to its start. Marking
  // any other lane makes its walk loop forever.
  std::vector<std::uint8_t> purely_periodic;
  bool stop_at_first_hit = true;

  void resize(std::size_t n, unsigned f_terms_, unsigned g_terms_);
};

struct OrbitWalk {
  std::int64_t first_hit = -1;  // step index of the first hit, start = 0
  std::uint64_t cycle_len = 0;  // 0 when the walk stopped before detecting the cycle
  std::uint64_t steps = 0;      // applications of f performed

  friend bool operator==(const OrbitWalk& a, const OrbitWalk& b) {
    return a.first_hit == b.first_hit && a.cycle_len == b.cycle_len && a.steps == b.steps;
  }
};

// Runs every lane on the active ISA.
void walk_orbits(const OrbitLanes& in, std::vector<OrbitWalk>& out);

// Explicit paths, for equivalence testing. walk_orbits_avx2 requires AVX2.
void walk_orbits_scalar(const OrbitLanes& in, std::vector<OrbitWalk>& out);
void walk_orbits_avx2(const OrbitLanes& in, std::vector<OrbitWalk>& out);

// Scalar walk of a single lane; shared by both paths for remainder lanes.
OrbitWalk walk_lane_scalar(const OrbitLanes& in, std::size_t lane);

}  // namespace qdyn::simd

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdyn/exactnum/dyadic.hpp"
#include "qdyn/exactnum/factor.hpp"
#include "qdyn/polydyn/int_poly.hpp"
#include "qdyn/polydyn/quad_map.hpp"

namespace qdyn {

struct OrbitEntry {
  unsigned n = 0;
  Dyadic value;                     // g(f^n(gamma))
  FactoredValue numerator_factored;  // sign 0 when the value vanishes
  std::vector<mpz_class> new_primes;  // identified primes absent from all earlier numerators
};

// Entries n = 1..N with factorizations of the numerators within `effort`.
std::vector<OrbitEntry> orbit_factor_table(const QuadMap& f, const IntPoly& g, unsigned N,
                                           const Effort& effort = {});

enum class PrimeKind { isolated, recurrent, nondivisor };
const char* to_string(PrimeKind k);

struct PrimeClassification {
  PrimeKind kind = PrimeKind::nondivisor;
  std::uint64_t tail_length = 0;   // steps before the cycle, counting from n = 1
  std::uint64_t cycle_length = 0;
  std::optional<std::uint64_t> first_hit;  // smallest n >= 1 with g(f^n(gamma)) = 0 mod p
};

// Walks f^n(gamma) mod p for n >= 1. Throws std::domain_error for p = 2 or
// composite p.
PrimeClassification classify_prime(const QuadMap& f, const IntPoly& g, std::uint64_t p);

struct RigidViolation {
  unsigned n;
  unsigned m;  // multiplier: the level compared against n is m * n
  mpz_class p;
  long vp_n;
  long vp_mn;  // -1 when the value at m * n vanishes
};

struct RigidReport {
  bool verified = true;
  unsigned depth = 0;
  std::vector<RigidViolation> violations;  // ascending by (n, m, p)
  std::optional<RigidViolation> first() const {
    if (violations.empty()) return std::nullopt;
    return violations.front();
  }
};

// v_p(b_n) > 0 implies v_p(b_{mn}) = v_p(b_n), for every identified odd prime.
RigidReport verify_rigid_divisibility(const QuadMap& f, const IntPoly& g, unsigned N,
                                      const Effort& effort = {});
RigidReport verify_rigid_divisibility(const std::vector<OrbitEntry>& table);

struct MaximalityCertificate {
  unsigned n = 0;
  mpz_class p;
  unsigned long vp_at_n = 0;
  std::vector<unsigned> checked_earlier_levels;  // 1..n-1, all with v_p = 0
  bool p_coprime_to_2a = true;
  bool witness_proven = true;        // false when p is only a probable prime
  bool assumes_irreducible = true;   // the criterion needs g o f^(n-1) irreducible
};

enum class CertificateStatus { found, none_found, not_applicable };
const char* to_string(CertificateStatus s);

struct CertificateOutcome {
  CertificateStatus status = CertificateStatus::none_found;
  std::optional<MaximalityCertificate> certificate;
  std::string budget_note;  // nonempty when an unsplit cofactor could hide a witness
};

// Smallest odd identified prime with odd valuation at level n and zero
// valuation at every earlier level. Requires table entries 1..n.
CertificateOutcome maximality_certificate(const QuadMap& f, const IntPoly& g, unsigned n,
                                          const std::vector<OrbitEntry>& table);

// Recomputes the orbit and checks the certificate by direct division.
bool revalidate_certificate(const QuadMap& f, const IntPoly& g, const MaximalityCertificate& cert);

struct CertificateScan {
  std::vector<CertificateOutcome> outcomes;  // levels 2..N
  std::vector<unsigned> certified_levels;
  unsigned applicable_levels = 0;
  mpq_class fraction;                        // certified / applicable
  bool budget_limited = false;               // some miss may be due to effort
};

CertificateScan certificate_scan(const QuadMap& f, const IntPoly& g, unsigned N, const Effort& effort = {});

}  // namespace qdyn

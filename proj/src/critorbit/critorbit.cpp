#include "qdyn/critorbit/critorbit.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "qdyn/exactnum/arith.hpp"
#include "qdyn/polydyn/dynamics.hpp"

namespace qdyn {

const char* to_string(PrimeKind k) {
  switch (k) {
    case PrimeKind::isolated: return "isolated";
    case PrimeKind::recurrent: return "recurrent";
    case PrimeKind::nondivisor: return "nondivisor";
  }
  return "nondivisor";
}

const char* to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::found: return "found";
    case CertificateStatus::none_found: return "none_found";
    case CertificateStatus::not_applicable: return "not_applicable";
  }
  return "none_found";
}

namespace {

bool divides(const mpz_class& p, const mpz_class& x) { return mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t()) != 0; }

// v_p of a numerator, with -1 standing for "value is zero".
long vp_or_inf(const mpz_class& num, const mpz_class& p) {
  if (num == 0) return -1;
  return static_cast<long>(valuation(num, p));
}

bool mpz_less(const mpz_class& a, const mpz_class& b) { return cmp(a, b) < 0; }

}  // namespace

std::vector<OrbitEntry> orbit_factor_table(const QuadMap& f, const IntPoly& g, unsigned N, const Effort& effort) {
  const std::vector<Dyadic> values = critical_orbit(f, g, N);
  std::vector<OrbitEntry> table;
  table.reserve(N);
  for (unsigned i = 0; i < N; ++i) {
    OrbitEntry e;
    e.n = i + 1;
    e.value = values[i];
    if (!e.value.is_zero()) e.numerator_factored = factor(e.value.num(), effort);
    for (const auto& [p, exp] : e.numerator_factored.factors) {
      bool seen = false;
      for (const auto& prev : table) {
        if (divides(p, prev.value.num())) {
          seen = true;
          break;
        }
      }
      if (!seen) e.new_primes.push_back(p);
    }
    table.push_back(std::move(e));
  }
  return table;
}

PrimeClassification classify_prime(const QuadMap& f, const IntPoly& g, std::uint64_t p) {
  if (p == 2) throw std::domain_error("classify_prime: p = 2 is unsupported");
  if (!is_prime(p)) throw std::domain_error("classify_prime: p must be prime");
  const std::uint64_t b = mod_u64(f.b, p);
  const std::uint64_t c = mod_u64(f.c, p);
  const std::uint64_t inv2 = (p + 1) / 2;
  const std::uint64_t gamma = mul_mod((p - b) % p, inv2, p);
  const auto step = [&](std::uint64_t x) {
    return static_cast<std::uint64_t>((static_cast<u128>(mul_mod(x, x, p)) + mul_mod(b, x, p) + c) % p);
  };
  std::vector<std::uint64_t> gmod;
  for (const auto& coef : g.coeffs()) gmod.push_back(mod_u64(coef, p));
  const auto g_at = [&](std::uint64_t x) {
    std::uint64_t v = 0;
    for (auto it = gmod.rbegin(); it != gmod.rend(); ++it) {
      v = static_cast<std::uint64_t>((static_cast<u128>(mul_mod(v, x, p)) + *it) % p);
    }
    return v;
  };

  // visited[x] = first n >= 1 with f^n(gamma) = x; at most p + 1 steps.
  std::unordered_map<std::uint64_t, std::uint64_t> visited;
  std::vector<std::uint64_t> path;
  std::uint64_t x = step(gamma);
  std::uint64_t n = 1;
  while (visited.find(x) == visited.end()) {
    visited.emplace(x, n);
    path.push_back(x);
    x = step(x);
    ++n;
  }
  PrimeClassification out;
  const std::uint64_t cycle_start = visited[x];
  out.tail_length = cycle_start - 1;
  out.cycle_length = n - cycle_start;
  bool in_tail = false;
  bool in_cycle = false;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (g_at(path[i]) != 0) continue;
    const std::uint64_t level = i + 1;
    if (!out.first_hit) out.first_hit = level;
    if (level < cycle_start) {
      in_tail = true;
    } else {
      in_cycle = true;
    }
  }
  out.kind = in_cycle ? PrimeKind::recurrent : in_tail ? PrimeKind::isolated : PrimeKind::nondivisor;
  return out;
}

RigidReport verify_rigid_divisibility(const std::vector<OrbitEntry>& table) {
  RigidReport rep;
  const auto N = static_cast<unsigned>(table.size());
  rep.depth = N;
  std::vector<mpz_class> primes;
  for (const auto& e : table) {
    for (const auto& [p, exp] : e.numerator_factored.factors) {
      if (p != 2) primes.push_back(p);
    }
  }
  std::sort(primes.begin(), primes.end(), mpz_less);
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  for (unsigned n = 1; n <= N; ++n) {
    const mpz_class& bn = table[n - 1].value.num();
    for (unsigned m = 2; m * n <= N; ++m) {
      const mpz_class& bmn = table[m * n - 1].value.num();
      for (const auto& p : primes) {
        const long vn = vp_or_inf(bn, p);
        if (vn == 0) continue;
        const long vmn = vp_or_inf(bmn, p);
        if (vn != vmn) rep.violations.push_back({n, m, p, vn, vmn});
      }
    }
  }
  rep.verified = rep.violations.empty();
  return rep;
}

RigidReport verify_rigid_divisibility(const QuadMap& f, const IntPoly& g, unsigned N, const Effort& effort) {
  if (N < 2) throw std::invalid_argument("verify_rigid_divisibility: depth must be >= 2");
  return verify_rigid_divisibility(orbit_factor_table(f, g, N, effort));
}

CertificateOutcome maximality_certificate(const QuadMap& /*f*/, const IntPoly& /*g*/, unsigned n,
                                          const std::vector<OrbitEntry>& table) {
  CertificateOutcome out;
  if (n < 2) {
    out.status = CertificateStatus::not_applicable;
    return out;
  }
  if (table.size() < n) throw std::invalid_argument("maximality_certificate: table shorter than level");
  const OrbitEntry& entry = table[n - 1];
  if (entry.value.is_zero()) {
    out.budget_note = "orbit value vanishes";
    return out;
  }

  struct Candidate {
    mpz_class p;
    bool proven;
  };
  std::vector<Candidate> cands;
  for (const auto& [p, e] : entry.numerator_factored.factors) cands.push_back({p, true});
  for (const auto& p : entry.numerator_factored.probable_primes) cands.push_back({p, false});
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return cmp(a.p, b.p) < 0; });

  for (const auto& cand : cands) {
    if (cand.p == 2) continue;
    const unsigned long v = valuation(entry.value.num(), cand.p);
    if (v % 2 == 0) continue;
    bool fresh = true;
    for (unsigned m = 1; m < n && fresh; ++m) fresh = !divides(cand.p, table[m - 1].value.num());
    if (!fresh) continue;
    MaximalityCertificate cert;
    cert.n = n;
    cert.p = cand.p;
    cert.vp_at_n = v;
    for (unsigned m = 1; m < n; ++m) cert.checked_earlier_levels.push_back(m);
    cert.witness_proven = cand.proven;
    out.status = CertificateStatus::found;
    out.certificate = cert;
    return out;
  }
  if (!entry.numerator_factored.complete()) {
    out.budget_note = std::string("cofactor ") + to_string(entry.numerator_factored.cofactor_status) +
                      " (" + std::to_string(entry.numerator_factored.cofactor.get_str().size()) +
                      "-digit) may hide a witness; raise effort";
  }
  return out;
}

bool revalidate_certificate(const QuadMap& f, const IntPoly& g, const MaximalityCertificate& cert) {
  if (cert.p == 2 || cert.n < 2) return false;
  const std::vector<Dyadic> values = critical_orbit(f, g, cert.n);
  const mpz_class& top = values[cert.n - 1].num();
  if (top == 0) return false;
  mpz_class rest = top;
  unsigned long v = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), cert.p.get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), cert.p.get_mpz_t());
    ++v;
  }
  if (v != cert.vp_at_n || v % 2 == 0) return false;
  for (unsigned m = 1; m < cert.n; ++m) {
    if (mpz_divisible_p(values[m - 1].num().get_mpz_t(), cert.p.get_mpz_t())) return false;
  }
  return true;
}

CertificateScan certificate_scan(const QuadMap& f, const IntPoly& g, unsigned N, const Effort& effort) {
  CertificateScan scan;
  if (N < 1) return scan;
  const auto table = orbit_factor_table(f, g, N, effort);
  for (unsigned n = 2; n <= N; ++n) {
    CertificateOutcome out = maximality_certificate(f, g, n, table);
    ++scan.applicable_levels;
    if (out.status == CertificateStatus::found) scan.certified_levels.push_back(n);
    if (out.status == CertificateStatus::none_found && !out.budget_note.empty() &&
        !table[n - 1].value.is_zero()) {
      scan.budget_limited = true;
    }
    scan.outcomes.push_back(std::move(out));
  }
  scan.fraction = scan.applicable_levels == 0 ? mpq_class(0)
                                               : mpq_class(static_cast<unsigned long>(scan.certified_levels.size()),
                                                           scan.applicable_levels);
  scan.fraction.canonicalize();
  return scan;
}

}  // namespace qdyn

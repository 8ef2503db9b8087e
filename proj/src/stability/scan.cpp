#include "qdyn/stability/scan.hpp"

#include <stdexcept>

#include "qdyn/error.hpp"
#include "qdyn/exactnum/arith.hpp"
#include "qdyn/stability/kronecker.hpp"

namespace qdyn {

const char* to_string(StabilityOverall s) {
  switch (s) {
    case StabilityOverall::stable_to_depth: return "stable_to_depth";
    case StabilityOverall::unstable: return "unstable";
    case StabilityOverall::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* to_string(EventualStatus s) {
  switch (s) {
    case EventualStatus::eventually_stable_witness: return "eventually_stable_witness";
    case EventualStatus::not_eventually_stable: return "not_eventually_stable";
    case EventualStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Fallback certification is attempted only where Rabin's test stays cheap.
constexpr int kFallbackMaxDegree = 64;

}  // namespace

StabilityReport stability_scan(const QuadMap& f, const IntPoly& g, unsigned N) {
  if (N < 1) throw std::invalid_argument("stability_scan: depth must be >= 1");
  const IntPoly fp = f.poly();
  StabilityReport report;
  for (auto& lv : base_irreducibility(f, g)) {
    if (lv.n <= N) report.levels.push_back(std::move(lv));
  }

  const unsigned first = static_cast<unsigned>(report.levels.size());
  Dyadic x = f.gamma;
  for (unsigned i = 1; i < first; ++i) x = f(x);
  for (unsigned n = first; n <= N; ++n) {
    x = f(x);
    const LevelVerdict& prev = report.levels.back();
    LevelVerdict lv;
    if (prev.verdict == Verdict::reducible) {
      lv.n = n;
      lv.verdict = Verdict::reducible;
      lv.evidence = EvidenceKind::inherited;
      for (const auto& h : prev.factors) lv.factors.push_back(compose(h, fp));
    } else {
      const Dyadic value = g.evaluate(x);
      lv.n = n;
      lv.square_test_value = value;
      if (prev.verdict == Verdict::irreducible && !is_square(value)) {
        lv.verdict = Verdict::irreducible;
        lv.evidence = EvidenceKind::square_criterion;
      } else {
        if (n < 24 && (1 << n) * g.degree() <= kFallbackMaxDegree) {
          LevelVerdict fb = certify_polynomial(compose_iterate(g, fp, n), n);
          fb.square_test_value = value;
          lv = std::move(fb);
        } else {
          lv.note = prev.verdict == Verdict::irreducible ? "orbit value is a square; degree too large for fallback"
                                                         : "previous level uncertified; degree too large for fallback";
        }
      }
    }
    report.levels.push_back(std::move(lv));
  }

  bool all_irreducible = true;
  bool any_reducible = false;
  for (const auto& lv : report.levels) {
    if (lv.verdict == Verdict::reducible) any_reducible = true;
    if (lv.verdict != Verdict::irreducible) all_irreducible = false;
    if (all_irreducible) report.certified_depth = lv.n;
  }
  report.level0_certified = !report.levels.empty() && report.levels.front().verdict == Verdict::irreducible;
  report.overall = all_irreducible ? StabilityOverall::stable_to_depth
                   : any_reducible ? StabilityOverall::unstable
                                   : StabilityOverall::inconclusive;
  return report;
}

EventualStabilityReport eventual_stability_scan(const QuadMap& f, unsigned max_unfold, unsigned depth) {
  if (max_unfold > 3) throw unsupported_size("eventual_stability_scan: max_unfold above 3");
  EventualStabilityReport rep;

  // 0 periodic under f forces x | f^m for some m, hence a linear factor at
  // every later level.
  {
    const mpz_class bound = abs(f.b) + abs(f.c) + 2;
    std::vector<mpz_class> orbit{0};
    mpz_class v = 0;
    for (std::size_t steps = 0; steps < 64 && abs(v) < bound; ++steps) {
      v = f(v);
      if (v == 0) {
        rep.status = EventualStatus::not_eventually_stable;
        orbit.push_back(v);
        rep.zero_cycle = orbit;
        return rep;
      }
      bool seen = false;
      for (const auto& o : orbit) seen = seen || o == v;
      if (seen) break;
      orbit.push_back(v);
    }
  }

  const IntPoly fp = f.poly();
  for (unsigned m = 0; m <= max_unfold; ++m) {
    const std::vector<IntPoly> pieces = m == 0 ? std::vector<IntPoly>{IntPoly::identity()}
                                               : factor_completely(iterate(fp, m));
    std::vector<StabilityReport> reports;
    bool all = true;
    for (const auto& piece : pieces) {
      reports.push_back(stability_scan(f, piece, depth));
      if (reports.back().overall != StabilityOverall::stable_to_depth) {
        all = false;
        break;
      }
    }
    if (all) {
      rep.status = EventualStatus::eventually_stable_witness;
      rep.m = m;
      rep.factors = pieces;
      rep.factor_reports = std::move(reports);
      return rep;
    }
  }
  return rep;
}

}  // namespace qdyn

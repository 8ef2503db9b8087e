#include "qdyn/stability/irreducibility.hpp"

#include <stdexcept>

#include "qdyn/exactnum/arith.hpp"
#include "qdyn/polydyn/mod_poly.hpp"
#include "qdyn/stability/kronecker.hpp"

namespace qdyn {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::irreducible: return "irreducible";
    case Verdict::reducible: return "reducible";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(EvidenceKind e) {
  switch (e) {
    case EvidenceKind::trivial: return "trivial";
    case EvidenceKind::discriminant: return "discriminant";
    case EvidenceKind::square_criterion: return "square_criterion";
    case EvidenceKind::second_iterate: return "second_iterate";
    case EvidenceKind::mod_p: return "mod_p";
    case EvidenceKind::kronecker_exhaustive: return "kronecker_exhaustive";
    case EvidenceKind::kronecker_factor: return "kronecker_factor";
    case EvidenceKind::repeated_factor: return "repeated_factor";
    case EvidenceKind::inherited: return "inherited";
    case EvidenceKind::none: return "none";
  }
  return "none";
}

const char* to_string(ModPVerdict v) {
  switch (v) {
    case ModPVerdict::irreducible: return "irreducible";
    case ModPVerdict::reducible: return "reducible";
    case ModPVerdict::degenerate: return "degenerate";
  }
  return "degenerate";
}

ModPVerdict irreducible_mod_p(const IntPoly& h, std::uint64_t p) {
  if (h.degree() < 1) throw std::invalid_argument("irreducible_mod_p: degree must be >= 1");
  if (p < 2 || !is_prime(p)) throw std::domain_error("irreducible_mod_p: p must be prime");
  modp::Poly hp = modp::reduce(h, p);
  if (modp::degree(hp) != h.degree()) return ModPVerdict::degenerate;
  hp = modp::monic(hp, p);
  const int d = modp::degree(hp);
  const modp::Poly dh = modp::derivative(hp, p);
  if (dh.empty() || modp::degree(modp::gcd(hp, dh, p)) > 0) return ModPVerdict::degenerate;
  if (d == 1) return ModPVerdict::irreducible;

  const modp::Poly x{0, 1};
  // frob[i] = x^(p^i) mod h
  std::vector<modp::Poly> frob{modp::rem(x, hp, p)};
  for (int i = 1; i <= d; ++i) frob.push_back(modp::powmod(frob.back(), p, hp, p));
  if (modp::sub(frob[static_cast<std::size_t>(d)], x, p) != modp::Poly{}) return ModPVerdict::reducible;
  for (int q = 2; q <= d; ++q) {
    if (d % q != 0 || !is_prime(static_cast<std::uint64_t>(q))) continue;
    const modp::Poly diff = modp::sub(frob[static_cast<std::size_t>(d / q)], x, p);
    if (modp::degree(modp::gcd(hp, diff, p)) > 0) return ModPVerdict::reducible;
  }
  return ModPVerdict::irreducible;
}

namespace {

LevelVerdict sqcrit_from_value(unsigned n, const Dyadic& value, bool prev_irreducible) {
  LevelVerdict lv;
  lv.n = n;
  lv.square_test_value = value;
  if (!prev_irreducible) {
    lv.note = "previous level not certified irreducible";
    return lv;
  }
  if (is_square(value)) {
    lv.note = "orbit value is a square; criterion silent";
    return lv;
  }
  lv.verdict = Verdict::irreducible;
  lv.evidence = EvidenceKind::square_criterion;
  return lv;
}

Dyadic dyadic_sqrt(const Dyadic& q) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), q.num().get_mpz_t());
  return Dyadic(r, q.kexp() / 2);
}

std::vector<IntPoly> compose_all(const std::vector<IntPoly>& factors, const IntPoly& f) {
  std::vector<IntPoly> out;
  out.reserve(factors.size());
  for (const auto& h : factors) out.push_back(compose(h, f));
  return out;
}

constexpr std::uint64_t kModPBound = 100;
constexpr int kModPMaxDegree = 64;

}  // namespace

LevelVerdict sqcrit_step(const QuadMap& f, const IntPoly& g, unsigned n, bool prev_irreducible) {
  if (n < 2) throw std::invalid_argument("sqcrit_step: level must be >= 2");
  Dyadic x = f.gamma;
  for (unsigned i = 0; i < n; ++i) x = f(x);
  return sqcrit_from_value(n, g.evaluate(x), prev_irreducible);
}

LevelVerdict certify_polynomial(const IntPoly& h, unsigned n) {
  LevelVerdict lv;
  lv.n = n;
  if (h.degree() < 1) {
    lv.note = "constant polynomial";
    return lv;
  }
  if (h.degree() == 1) {
    lv.verdict = Verdict::irreducible;
    lv.evidence = EvidenceKind::trivial;
    return lv;
  }
  if (!is_squarefree(h)) {
    const IntPoly g = gcd(h, h.derivative());
    lv.verdict = Verdict::reducible;
    lv.evidence = EvidenceKind::repeated_factor;
    lv.factors = {g, *divide_exact(h, g)};
    return lv;
  }
  if (h.degree() == 2) {
    const mpz_class a = h.coeff(2), b = h.coeff(1), c = h.coeff(0);
    const mpz_class disc = b * b - 4 * a * c;
    lv.evidence = EvidenceKind::discriminant;
    lv.square_test_value = Dyadic(disc);
    if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) {
      lv.verdict = Verdict::irreducible;
      return lv;
    }
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
    // Root (s - b) / 2a gives the primitive linear factor 2a x + (b - s).
    const IntPoly lin = IntPoly(std::vector<mpz_class>{b - s, 2 * a}).primitive_part();
    lv.verdict = Verdict::reducible;
    lv.factors = {lin, *divide_exact(h, lin)};
    return lv;
  }
  if (h.degree() <= kModPMaxDegree) {
    for (std::uint64_t p = 2; p < kModPBound; ++p) {
      if (!is_prime(p)) continue;
      if (irreducible_mod_p(h, p) == ModPVerdict::irreducible) {
        lv.verdict = Verdict::irreducible;
        lv.evidence = EvidenceKind::mod_p;
        lv.witness_prime = p;
        return lv;
      }
    }
  }
  if (h.is_monic() && h.degree() <= kKroneckerMaxDegree) {
    if (auto split = kronecker_factor(h, h.degree() / 2)) {
      lv.verdict = Verdict::reducible;
      lv.evidence = EvidenceKind::kronecker_factor;
      lv.factors = {split->factor, split->cofactor};
    } else {
      lv.verdict = Verdict::irreducible;
      lv.evidence = EvidenceKind::kronecker_exhaustive;
    }
    return lv;
  }
  lv.note = "no certificate within limits";
  return lv;
}

std::vector<LevelVerdict> base_irreducibility(const QuadMap& f, const IntPoly& g) {
  std::vector<LevelVerdict> out;
  const IntPoly fp = f.poly();
  if (g == IntPoly::identity()) {
    LevelVerdict l0;
    l0.n = 0;
    l0.verdict = Verdict::irreducible;
    l0.evidence = EvidenceKind::trivial;
    out.push_back(l0);

    LevelVerdict l1 = certify_polynomial(fp, 1);
    out.push_back(l1);

    LevelVerdict l2;
    l2.n = 2;
    if (l1.verdict == Verdict::reducible) {
      l2.verdict = Verdict::reducible;
      l2.evidence = EvidenceKind::inherited;
      l2.factors = compose_all(l1.factors, fp);
    } else {
      const Dyadic v = f(f(f.gamma));
      l2.square_test_value = v;
      l2.evidence = EvidenceKind::second_iterate;
      if (!is_square(v)) {
        l2.verdict = Verdict::irreducible;
      } else {
        const Dyadic s = dyadic_sqrt(v);
        bool splits = false;
        for (const Dyadic& cand : {(-f.m + s).shifted(-1), (-f.m - s).shifted(-1)}) {
          if (!cand.is_zero() && is_square(cand)) splits = true;
        }
        if (!splits) {
          l2.verdict = Verdict::irreducible;
        } else if (auto pair = kronecker_factor(compose(fp, fp), 2)) {
          l2.verdict = Verdict::reducible;
          l2.factors = {pair->factor, pair->cofactor};
        } else {
          l2.note = "second-iterate condition fails but no quadratic factor found";
        }
      }
    }
    out.push_back(l2);
    return out;
  }

  LevelVerdict l0 = certify_polynomial(g, 0);
  out.push_back(l0);
  if (l0.verdict == Verdict::reducible) {
    LevelVerdict l1;
    l1.n = 1;
    l1.verdict = Verdict::reducible;
    l1.evidence = EvidenceKind::inherited;
    l1.factors = compose_all(l0.factors, fp);
    out.push_back(l1);
  } else {
    out.push_back(certify_polynomial(compose(g, fp), 1));
  }
  return out;
}

}  // namespace qdyn

#include "qdyn/stability/kronecker.hpp"

#include <algorithm>
#include <stdexcept>

#include "qdyn/error.hpp"
#include "qdyn/exactnum/factor.hpp"

namespace qdyn {

namespace {

// Sample abscissae: 0, 1, -1, 2, -2, 3, then 4, -3, 5, -4, ...
long sample_point(int i) {
  static constexpr long head[] = {0, 1, -1, 2, -2, 3};
  if (i < 6) return head[i];
  const int t = i - 6;
  return t % 2 == 0 ? 4 + t / 2 : -3 - t / 2;
}

std::vector<mpz_class> signed_divisors(const mpz_class& v) {
  const FactoredValue fv = factor(v, Effort::unlimited());
  std::vector<mpz_class> pos{1};
  for (const auto& [p, e] : fv.factors) {
    const std::size_t base = pos.size();
    mpz_class pk = 1;
    for (unsigned long k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) pos.push_back(pos[i] * pk);
    }
  }
  if (fv.cofactor != 1) {
    // Unlimited effort leaves only probable primes here; treat as prime.
    const std::size_t base = pos.size();
    for (std::size_t i = 0; i < base; ++i) pos.push_back(pos[i] * fv.cofactor);
  }
  std::sort(pos.begin(), pos.end(), [](const mpz_class& a, const mpz_class& b) { return cmp(a, b) < 0; });
  std::vector<mpz_class> out;
  out.reserve(2 * pos.size());
  for (const auto& d : pos) {
    out.push_back(d);
    out.push_back(-d);
  }
  return out;
}

// d / w in canonical form; GMP arithmetic is undefined on a negative denominator.
mpq_class ratio(const mpz_class& d, const mpz_class& w) {
  mpq_class q(d, w);
  q.canonicalize();
  return q;
}

class Search {
 public:
  Search(const IntPoly& h, int k, const std::vector<long>& xs, const std::vector<mpz_class>& hv,
         const std::vector<long>& check_x, const std::vector<mpz_class>& check_v)
      : h_(h), k_(k), xs_(xs), hv_(hv), check_x_(check_x), check_v_(check_v) {
    const int npts = k + 1;
    w_.resize(npts);
    basis_.resize(npts);
    for (int i = 0; i < npts; ++i) {
      mpz_class w = 1;
      IntPoly num = IntPoly::constant(1);
      for (int j = 0; j < npts; ++j) {
        if (j == i) continue;
        w *= xs_[i] - xs_[j];
        num *= IntPoly{-xs_[j], 1};
      }
      w_[i] = w;
      basis_[i] = num;
    }
    for (int i = 0; i < k; ++i) divisors_.push_back(signed_divisors(hv_[i]));
    chosen_.resize(npts);
  }

  std::optional<FactorPair> run() {
    if (dfs(0, mpq_class(0))) return result_;
    return std::nullopt;
  }

 private:
  bool congruent_with_prefix(int i, const mpz_class& d) const {
    for (int j = 0; j < i; ++j) {
      const mpz_class diff = d - chosen_[j];
      if (!mpz_divisible_ui_p(diff.get_mpz_t(), static_cast<unsigned long>(std::labs(xs_[i] - xs_[j])))) {
        return false;
      }
    }
    return true;
  }

  bool dfs(int i, const mpq_class& partial) {
    if (i == k_) {
      // Monic condition: sum_i d_i / w_i == 1 fixes the last value.
      const mpq_class last = (mpq_class(1) - partial) * w_[k_];
      if (last.get_den() != 1) return false;
      const mpz_class d = last.get_num();
      if (d == 0 || !mpz_divisible_p(hv_[k_].get_mpz_t(), d.get_mpz_t())) return false;
      if (!congruent_with_prefix(k_, d)) return false;
      chosen_[k_] = d;
      return try_candidate();
    }
    for (const auto& d : divisors_[i]) {
      if (!congruent_with_prefix(i, d)) continue;
      chosen_[i] = d;
      if (dfs(i + 1, partial + ratio(d, w_[i]))) return true;
    }
    return false;
  }

  bool try_candidate() {
    std::vector<mpq_class> coeffs(static_cast<std::size_t>(k_ + 1), 0);
    for (int i = 0; i <= k_; ++i) {
      const mpq_class scale = ratio(chosen_[i], w_[i]);
      for (int j = 0; j <= k_; ++j) coeffs[j] += scale * basis_[i].coeff(j);
    }
    std::vector<mpz_class> ic;
    ic.reserve(coeffs.size());
    for (const auto& c : coeffs) {
      if (c.get_den() != 1) return false;
      ic.push_back(c.get_num());
    }
    IntPoly cand(std::move(ic));
    if (cand.degree() != k_ || !cand.is_monic()) return false;
    for (std::size_t t = 0; t < check_x_.size(); ++t) {
      const mpz_class v = cand.evaluate(mpz_class(check_x_[t]));
      if (v == 0 || !mpz_divisible_p(check_v_[t].get_mpz_t(), v.get_mpz_t())) return false;
    }
    auto q = divide_exact(h_, cand);
    if (!q) return false;
    result_ = FactorPair{std::move(cand), std::move(*q)};
    return true;
  }

  const IntPoly& h_;
  int k_;
  const std::vector<long>& xs_;
  const std::vector<mpz_class>& hv_;
  const std::vector<long>& check_x_;
  const std::vector<mpz_class>& check_v_;
  std::vector<mpz_class> w_;
  std::vector<IntPoly> basis_;
  std::vector<std::vector<mpz_class>> divisors_;
  std::vector<mpz_class> chosen_;
  FactorPair result_;
};

constexpr int kCheckPoints = 3;

bool poly_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const int c = cmp(a.coeff(i), b.coeff(i));
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace

std::optional<FactorPair> kronecker_factor(const IntPoly& h, int max_factor_degree) {
  if (h.degree() > kKroneckerMaxDegree) throw unsupported_size("kronecker_factor: degree above 8");
  if (!h.is_monic()) throw std::invalid_argument("kronecker_factor: polynomial must be monic");
  if (!is_squarefree(h)) throw std::invalid_argument("kronecker_factor: polynomial must be squarefree");
  const int top = std::min(max_factor_degree, h.degree() / 2);
  if (top < 1) return std::nullopt;

  std::vector<long> xs;
  std::vector<mpz_class> hv;
  for (int i = 0; static_cast<int>(xs.size()) < top + 1 + kCheckPoints; ++i) {
    const long x = sample_point(i);
    const mpz_class v = h.evaluate(mpz_class(x));
    if (v == 0) continue;
    xs.push_back(x);
    hv.push_back(v);
  }

  for (int k = 1; k <= top; ++k) {
    const std::vector<long> pts(xs.begin(), xs.begin() + k + 1);
    const std::vector<mpz_class> vals(hv.begin(), hv.begin() + k + 1);
    const std::vector<long> cx(xs.begin() + k + 1, xs.end());
    const std::vector<mpz_class> cv(hv.begin() + k + 1, hv.end());
    Search search(h, k, pts, vals, cx, cv);
    if (auto r = search.run()) return r;
  }
  return std::nullopt;
}

std::vector<IntPoly> factor_completely(const IntPoly& h) {
  if (h.degree() > kKroneckerMaxDegree) throw unsupported_size("factor_completely: degree above 8");
  if (!h.is_monic()) throw std::invalid_argument("factor_completely: polynomial must be monic");
  std::vector<IntPoly> out;
  if (h.degree() <= 1) {
    if (h.degree() == 1) out.push_back(h);
    return out;
  }
  if (!is_squarefree(h)) {
    const IntPoly g = gcd(h, h.derivative());
    const IntPoly q = *divide_exact(h, g);
    for (const IntPoly* part : {&g, &q}) {
      auto sub = factor_completely(*part);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  } else if (auto split = kronecker_factor(h, h.degree() / 2)) {
    for (const IntPoly* part : {&split->factor, &split->cofactor}) {
      auto sub = factor_completely(*part);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  } else {
    out.push_back(h);
  }
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

}  // namespace qdyn

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qdyn/polydyn/dynamics.hpp"
#include "qdyn/polydyn/int_poly.hpp"
#include "qdyn/polydyn/mod_poly.hpp"
#include "qdyn/polydyn/quad_map.hpp"

using namespace qdyn;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int deg, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<mpz_class> c;
  for (int i = 0; i < deg; ++i) c.emplace_back(d(rng));
  c.emplace_back(1 + (d(rng) == 0 ? 1 : 0));
  return IntPoly(c);
}

}  // namespace

TEST_CASE("evaluation") {
  CHECK(IntPoly{5, 0, 1}.evaluate(Dyadic(0)) == Dyadic(5));
  CHECK(IntPoly{-1, -1, 1}.evaluate(Dyadic::half(1)) == Dyadic(mpz_class(-5), 2));
  const Dyadic q(mpz_class(-37), 5);
  CHECK(IntPoly::identity().evaluate(q) == q);
  CHECK(IntPoly{1, 2, 3}.evaluate(mpz_class(10)) == 321);
}

TEST_CASE("composition and iteration") {
  const IntPoly f{5, 0, 1};
  CHECK(compose(IntPoly::identity(), f) == f);

  const IntPoly h{17, 10, 1};
  const IntPoly hh = compose(h, h);
  CHECK(hh.degree() == 4);
  CHECK(hh.coeff(0) == 476);
  CHECK(hh.coeff(0) == h.evaluate(h.evaluate(mpz_class(0))));

  const IntPoly g{-1, -1, 1};
  const IntPoly g3 = iterate(g, 3);
  CHECK(g3 == IntPoly{-1, 4, 0, -3, 1} * IntPoly{1, 1, -3, -1, 1});
  CHECK(g3 == oracle::iterate_compose(IntPoly::identity(), g, 3));
  CHECK(compose_iterate(h, g, 2) == oracle::iterate_compose(h, g, 2));
  CHECK(iterate(g, 0) == IntPoly::identity());
}

TEST_CASE("composition is associative") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const IntPoly g = random_poly(rng, 1 + i % 3, 9);
    const IntPoly f = random_poly(rng, 2, 9);
    CHECK(compose(g, compose(f, f)) == compose(compose(g, f), f));
  }
}

TEST_CASE("quadratic normal form") {
  const QuadMap f(-1, -1);
  CHECK(f.gamma == Dyadic::half(1));
  // c = gamma^2 + gamma + m
  CHECK(f.gamma * f.gamma + f.gamma + f.m == Dyadic(-1));
  CHECK(QuadMap::from_poly(IntPoly{3, -6, 1}) == QuadMap(-6, 3));
  CHECK_THROWS_AS(QuadMap::from_poly(IntPoly{1, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(QuadMap::from_poly(IntPoly{1, 1, 0, 1}), std::invalid_argument);
}

TEST_CASE("critical orbits") {
  const auto a = critical_orbit(QuadMap(0, 5), IntPoly::identity(), 4);
  CHECK(a == std::vector<Dyadic>{Dyadic(5), Dyadic(30), Dyadic(905), Dyadic(819030)});

  const auto b = critical_orbit(QuadMap(-1, -1), IntPoly::identity(), 3);
  CHECK(b == std::vector<Dyadic>{Dyadic(mpz_class(-5), 2), Dyadic(mpz_class(29), 4), Dyadic(mpz_class(121), 8)});

  const auto c = critical_orbit(QuadMap(0, -2), IntPoly::identity(), 3);
  CHECK(c == std::vector<Dyadic>{Dyadic(-2), Dyadic(2), Dyadic(2)});

  // With a translation g.
  const auto d = critical_orbit(QuadMap(0, -4), IntPoly{-2, 1}, 3);
  CHECK(d == std::vector<Dyadic>{Dyadic(-6), Dyadic(10), Dyadic(138)});
}

TEST_CASE("half-integral critical points keep odd numerators") {
  for (long b = -9; b <= 9; b += 2) {
    for (long c = -5; c <= 5; ++c) {
      const auto orbit = critical_orbit(QuadMap(b, c), IntPoly::identity(), 12);
      for (std::size_t i = 0; i < orbit.size(); ++i) {
        CHECK(orbit[i].kexp() == (2ul << i));
        CHECK(mpz_odd_p(orbit[i].num().get_mpz_t()) != 0);
      }
    }
  }
}

TEST_CASE("resultants") {
  CHECK(resultant(IntPoly{5, 0, 1}, IntPoly{0, 2}) == 20);
  CHECK(resultant(IntPoly{-7, 1}, IntPoly{1, 2, 3}) == IntPoly{1, 2, 3}.evaluate(mpz_class(7)));
  CHECK(resultant(IntPoly{1, 0, 1}, IntPoly{1, 0, 1}) == 0);
  CHECK_THROWS_AS(resultant(IntPoly{3}, IntPoly{4}), std::domain_error);

  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    const IntPoly h1 = random_poly(rng, 1 + i % 4, 20);
    const IntPoly h2 = random_poly(rng, i % 5, 20);
    CHECK(resultant(h1, h2) == oracle::sylvester_resultant(h1, h2));
  }
}

TEST_CASE("discriminant chain examples") {
  const DiscChain a = disc_chain(QuadMap(0, 5), IntPoly::identity(), 2);
  REQUIRE(a.entries.size() == 3);
  CHECK(a.entries[0].delta == 1);
  CHECK(a.entries[1].delta == 20);
  CHECK(a.entries[2].delta == 192000);

  const DiscChain b = disc_chain(QuadMap(0, -2), IntPoly::identity(), 1);
  CHECK(b.entries[1].delta == -8);

  // f = x^2 - 2x + 1 sends gamma = 1 to 0, so f has a double root.
  const DiscChain c = disc_chain(QuadMap(-2, 1), IntPoly::identity(), 3);
  CHECK(c.inseparable);
  CHECK(c.inseparable_level == 1);
}

TEST_CASE("discriminant chain matches the Sylvester resultant") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> coef(-10, 10);
  int checked = 0;
  while (checked < 20) {
    const QuadMap f(coef(rng), coef(rng));
    const IntPoly g = checked % 2 == 0 ? IntPoly::identity() : IntPoly{coef(rng), 1};
    const DiscChain chain = disc_chain(f, g, 4);
    if (chain.inseparable) continue;
    REQUIRE(chain.entries.size() == 5);
    for (const DiscEntry& e : chain.entries) {
      const IntPoly h = oracle::iterate_compose(g, f.poly(), e.n);
      if (h.degree() < 1) continue;
      CHECK(e.delta == oracle::sylvester_resultant(h, h.derivative()));
    }
    ++checked;
  }
}

TEST_CASE("critical finiteness") {
  const auto a = is_critically_finite(QuadMap(0, -2));
  CHECK(a.finite);
  CHECK(a.orbit.front() == Dyadic(0));

  const auto b = is_critically_finite(QuadMap(0, 1));
  CHECK_FALSE(b.finite);

  const auto c = is_critically_finite(QuadMap(-4, 4));
  CHECK(c.finite);
  REQUIRE(c.orbit.size() >= 3);
  CHECK(c.orbit[0] == Dyadic(2));
  CHECK(c.orbit[1] == Dyadic(0));
  CHECK(c.orbit[2] == Dyadic(4));

  CHECK_FALSE(is_critically_finite(QuadMap(1, 0)).finite);
  CHECK(is_critically_finite(QuadMap(0, -1)).finite);  // 0 -> -1 -> 0
  CHECK(is_critically_finite(QuadMap(0, 0)).finite);
}

TEST_CASE("conjugation by a shift") {
  // f(x + 3) - 3 for f = x^2 - 6x + 3 is x^2 - 9.
  CHECK(conjugate_by_shift(QuadMap(-6, 3), 3) == QuadMap(0, -9));
  CHECK(conjugate_by_shift(QuadMap(7, -2), 0) == QuadMap(7, -2));

  // f = h(x - k) + k with h = x^2 - k^2: f^n(a0) = h^n(a0 - k) + k.
  for (long k = -4; k <= 4; ++k) {
    const QuadMap h(0, -k * k);
    const QuadMap f = conjugate_by_shift(h, -k);
    mpz_class fx = 0, hx = -k;
    for (int n = 1; n <= 5; ++n) {
      fx = f(fx);
      hx = h(hx);
      CHECK(fx == hx + k);
    }
  }

  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int i = 0; i < 10; ++i) {
    const QuadMap f(d(rng), d(rng));
    const mpz_class t = d(rng);
    const QuadMap h = conjugate_by_shift(f, t);
    for (long x0 = -5; x0 <= 5; ++x0) {
      mpz_class hx = x0, fx = x0 + t;
      for (int n = 1; n <= 6; ++n) {
        hx = h(hx);
        fx = f(fx);
        CHECK(hx == fx - t);
      }
    }
  }
}

TEST_CASE("polynomial division and gcd") {
  const IntPoly a = IntPoly{-1, 1} * IntPoly{2, 0, 1};
  CHECK(divide_exact(a, IntPoly{-1, 1}) == std::optional<IntPoly>(IntPoly{2, 0, 1}));
  CHECK_FALSE(divide_exact(a, IntPoly{1, 1}).has_value());
  CHECK(gcd(a, IntPoly{-1, 1} * IntPoly{3, 1}) == IntPoly{-1, 1});
  CHECK(is_squarefree(a));
  CHECK_FALSE(is_squarefree(a * IntPoly{-1, 1}));
  CHECK(IntPoly{6, 4, 2}.content() == 2);
}

TEST_CASE("polynomials mod p") {
  CHECK(modp::roots(IntPoly{-1, 0, 1}, 7) == std::vector<std::uint64_t>{1, 6});
  CHECK(modp::roots(IntPoly{1, 0, 1}, 3).empty());
  const IntPoly h{2, 0, 2, 0, 1};
  for (std::uint64_t p : {5ull, 13ull, 17ull, 101ull}) {
    std::vector<std::uint64_t> brute;
    for (std::uint64_t x = 0; x < p; ++x) {
      if (oracle::eval_mod(h, x, p) == 0) brute.push_back(x);
    }
    CHECK(modp::roots(h, p) == brute);
  }
}

TEST_CASE("text form") {
  CHECK(IntPoly{17, -10, 1}.str() == "x^2 - 10*x + 17");
  CHECK(IntPoly{}.str() == "0");
  CHECK(IntPoly{0, -1}.str() == "-x");
}

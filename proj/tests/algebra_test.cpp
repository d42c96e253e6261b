// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "hayes/ffield.hpp"
#include "hayes/fppoly.hpp"
#include "hayes/polyfactor.hpp"

using namespace hayes;

namespace {

Poly P(int p, std::initializer_list<int> coeffs_low_first) {
  std::vector<uint8_t> c;
  for (int v : coeffs_low_first) {
    int r = v % p; if (r < 0) r += p;
    c.push_back(uint8_t(r));
  }
  return Poly(p, std::move(c));
}

// reference schoolbook product in wide integers, for cross-checking the
// Karatsuba/bitsliced paths
Poly mul_reference(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.p);
  std::vector<long long> acc(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) acc[i + j] += (long long)a.c[i] * b.c[j];
  Poly r(a.p);
  r.c.resize(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r.c[i] = uint8_t(acc[i] % a.p);
  r.trim();
  return r;
}

}  // namespace

TEST_CASE("polynomial ring basics over F_3") {
  Poly f = P(3, {2, 2, 0, 1});  // x^3 + 2x + 2 = x^3 - x - 1
  REQUIRE(f.deg() == 3);
  REQUIRE(eval(f, 0) == 2);
  REQUIRE(eval(f, 1) == 2);
  REQUIRE(eval(f, 2) == 2);

  Poly g = P(3, {1, 1});
  Poly prod = f * g;
  REQUIRE(prod == P(3, {2, 1, 2, 1, 1}));  // (x^3+2x+2)(x+1)
  Poly q, r;
  divrem(prod, g, q, r);
  REQUIRE(q == f);
  REQUIRE(r.is_zero());
  REQUIRE(exact_div(prod, f) == g);
  REQUIRE_THROWS_AS(exact_div(prod + Poly::one(3), f), MathError);
}

TEST_CASE("multiplication agrees with reference across sizes and characteristics") {
  std::mt19937_64 rng(12345);
  for (int p : {2, 3, 5, 7}) {
    for (int d : {0, 1, 7, 63, 64, 65, 511, 1500, 5000}) {
      Poly a = random_poly(p, d, rng);
      Poly b = random_poly(p, d / 2 + 1, rng);
      REQUIRE(a * b == mul_reference(a, b));
    }
  }
}

TEST_CASE("divrem invariants on random inputs") {
  std::mt19937_64 rng(777);
  for (int p : {2, 3, 5}) {
    for (int trial = 0; trial < 50; ++trial) {
      Poly a = random_poly(p, int(rng() % 60), rng);
      Poly b = random_poly(p, int(rng() % 20), rng);
      if (b.is_zero()) continue;
      Poly q, r;
      divrem(a, b, q, r);
      REQUIRE(q * b + r == a);
      REQUIRE(r.deg() < b.deg());
    }
  }
}

TEST_CASE("extended gcd certificate") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    Poly a = random_poly(3, int(rng() % 30), rng);
    Poly b = random_poly(3, int(rng() % 30), rng);
    if (a.is_zero() && b.is_zero()) continue;
    Poly u, v;
    Poly g = xgcd(a, b, u, v);
    REQUIRE(u * a + v * b == g);
    REQUIRE(g == gcd(a, b));
    if (!a.is_zero()) REQUIRE((a % g).is_zero());
    if (!b.is_zero()) REQUIRE((b % g).is_zero());
  }
}

TEST_CASE("spread substitutes x -> x^stride") {
  Poly f = P(3, {1, 1, 1});  // x^2 + x + 1
  REQUIRE(spread(f, 3) == P(3, {1, 0, 0, 1, 0, 0, 1}));
  // over F_3 the cube of a prime-field polynomial is its spread by 3
  std::mt19937_64 rng(5);
  Poly g = random_poly(3, 17, rng);
  REQUIRE(g * g * g == spread(g, 3));
}

TEST_CASE("x^9 - x over F_3 factors into all monic irreducibles of degree dividing 2") {
  Poly f(3);
  f.c.assign(10, 0);
  f.c[9] = 1;
  f.c[1] = 2;
  auto fac = factor(f);
  std::vector<Poly> expect = {
      P(3, {0, 1}),        // x
      P(3, {1, 1}),        // x + 1
      P(3, {2, 1}),        // x + 2
      P(3, {1, 0, 1}),     // x^2 + 1
      P(3, {2, 1, 1}),     // x^2 + x + 2
      P(3, {2, 2, 1}),     // x^2 + 2x + 2
  };
  REQUIRE(fac.size() == expect.size());
  for (size_t i = 0; i < fac.size(); ++i) {
    REQUIRE(fac[i].f == expect[i]);
    REQUIRE(fac[i].mult == 1);
  }
}

TEST_CASE("factorization handles multiplicities and is deterministic") {
  // (x+1)^2 * (x^2+1)^3 over F_3
  Poly f = P(3, {1, 1}) * P(3, {1, 1});
  Poly s = P(3, {1, 0, 1});
  f = f * s * s * s;
  auto fac = factor(f);
  REQUIRE(fac.size() == 2);
  REQUIRE(fac[0].f == P(3, {1, 1}));
  REQUIRE(fac[0].mult == 2);
  REQUIRE(fac[1].f == P(3, {1, 0, 1}));
  REQUIRE(fac[1].mult == 3);

  std::mt19937_64 rng(99);
  Poly big = random_poly(2, 120, rng, true);
  auto f1 = factor(big);
  auto f2 = factor(big);
  REQUIRE(f1.size() == f2.size());
  Poly rebuilt = Poly::one(2);
  for (size_t i = 0; i < f1.size(); ++i) {
    REQUIRE(f1[i].f == f2[i].f);
    REQUIRE(f1[i].mult == f2[i].mult);
    REQUIRE(FiniteField::is_irreducible(f1[i].f));
    for (int k = 0; k < f1[i].mult; ++k) rebuilt = rebuilt * f1[i].f;
  }
  REQUIRE(rebuilt == monic(big));
}

TEST_CASE("irreducibility certificates") {
  REQUIRE(FiniteField::is_irreducible(P(3, {2, 2, 0, 1})));       // x^3 - x - 1
  REQUIRE(FiniteField::is_irreducible(P(3, {1, 0, 1})));          // x^2 + 1
  REQUIRE_FALSE(FiniteField::is_irreducible(P(3, {2, 0, 1})));    // x^2 - 1
  REQUIRE(FiniteField::is_irreducible(P(2, {1, 1, 1})));          // x^2 + x + 1
  REQUIRE(FiniteField::is_irreducible(P(2, {1, 1, 0, 0, 1})));    // x^4 + x + 1
  REQUIRE_FALSE(FiniteField::is_irreducible(P(2, {1, 0, 0, 0, 1})));  // (x+1)^4
}

TEST_CASE("F_9 arithmetic with i^2 = -1") {
  auto F = FiniteField::make(3, 2);
  REQUIRE(F->modulus == P(3, {1, 0, 1}));  // lexicographically first: x^2 + 1
  FFElem i = F->gen();
  REQUIRE(F->mul(i, i) == F->from_int(-1));
  FFElem a = F->add(F->one(), i);  // 1 + i
  // (1+i)(1+2i) = 2, hence (1+i)^{-1} = 2 + i
  FFElem b = F->add(F->one(), F->mul(F->from_int(2), i));
  REQUIRE(F->mul(a, b) == F->from_int(2));
  REQUIRE(F->inv(a) == F->add(F->from_int(2), i));
  // Frobenius: (1+i)^3 = 1 - i
  REQUIRE(F->frobenius(a) == F->sub(F->one(), i));
  REQUIRE(F->frobenius(F->frobenius(a)) == a);
  // minimal polynomial of 1+i is x^2 + x + 2
  REQUIRE(F->minpoly(a) == P(3, {2, 1, 1}));
  REQUIRE(F->minpoly(i) == P(3, {1, 0, 1}));
  REQUIRE(F->minpoly(F->from_int(2)) == P(3, {1, 1}));
}

TEST_CASE("F_4 arithmetic and element enumeration") {
  auto F = FiniteField::make(2, 2);
  REQUIRE(F->modulus == P(2, {1, 1, 1}));
  FFElem c = F->gen();
  REQUIRE(F->mul(c, c) == F->add(c, F->one()));            // c^2 = c + 1
  REQUIRE(F->mul(F->mul(c, c), c) == F->one());            // c^3 = 1
  REQUIRE(F->frobenius(c) == F->mul(c, c));
  int nonzero = 0;
  for (uint64_t r = 0; r < F->q; ++r) {
    FFElem e = F->from_rank(r);
    REQUIRE(F->rank(e) == r);
    if (!e.is_zero()) {
      ++nonzero;
      REQUIRE(F->mul(e, F->inv(e)) == F->one());
    }
  }
  REQUIRE(nonzero == 3);
}

TEST_CASE("larger field without tables: F_{3^6}") {
  auto F = FiniteField::make(3, 6);
  REQUIRE(F->q == 729);
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    FFElem a = F->from_rank(rng() % F->q);
    FFElem b = F->from_rank(rng() % F->q);
    // commutativity and distributivity spot checks
    REQUIRE(F->mul(a, b) == F->mul(b, a));
    FFElem s = F->add(a, b);
    FFElem lhs = F->mul(s, s);
    FFElem rhs = F->add(F->add(F->mul(a, a), F->mul(b, b)),
                        F->mul(F->from_int(2), F->mul(a, b)));
    REQUIRE(lhs == rhs);
    if (!a.is_zero()) REQUIRE(F->mul(a, F->inv(a)) == F->one());
    // Frobenius has order 6
    REQUIRE(F->frobenius_iter(a, 6) == a);
    REQUIRE(F->pow(a, 3) == F->frobenius(a));
  }
  // the multiplicative group has order 728
  FFElem g = F->gen();
  REQUIRE(F->pow(g, 728) == F->one());
}

TEST_CASE("error taxonomy carries CLI exit codes") {
  REQUIRE(static_cast<int>(ErrKind::parse) == 2);
  REQUIRE(static_cast<int>(ErrKind::precondition) == 3);
  REQUIRE(static_cast<int>(ErrKind::identity) == 4);
  try {
    throw inexact_division("test site");
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrKind::precondition);
  }
}

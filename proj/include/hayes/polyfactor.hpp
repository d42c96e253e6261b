// SPDX-License-Identifier: Apache-2.0
#pragma once

// Factorization of univariate polynomials over the prime field F_p:
// squarefree split, distinct-degree split, then seeded Cantor-Zassenhaus.
// The output order is deterministic (degree, then lexicographic), so tests
// can freeze factorizations verbatim.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "fppoly.hpp"

namespace hayes {

struct PolyFactor {
  Poly f;   // monic irreducible
  int mult;
};

namespace detail {

// p-th root of a polynomial whose derivative vanishes: f(x) = g(x^p) with
// F_p coefficients, so g just gathers every p-th coefficient
inline Poly pth_root(const Poly& f) {
  Poly g(f.p);
  g.c.resize(f.deg() / f.p + 1, 0);
  for (size_t i = 0; i < g.c.size(); ++i) g.c[i] = f.coeff(i * f.p);
  g.trim();
  return g;
}

inline void squarefree_rec(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  if (f.deg() < 1) return;
  Poly d = derivative(f);
  if (d.is_zero()) {
    squarefree_rec(pth_root(f), mult * f.p, out);
    return;
  }
  Poly g = gcd(f, d);
  Poly w = exact_div(f, g);  // squarefree part carrying multiplicity-coprime factors
  int k = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, g);
    Poly z = exact_div(w, y);
    if (!z.is_one()) out.emplace_back(monic(z), mult * k);
    g = exact_div(g, y);
    w = std::move(y);
    ++k;
  }
  if (!g.is_one()) squarefree_rec(g, mult, out);
}

inline void equal_degree_split(const Poly& f, int d, std::mt19937_64& rng,
                               std::vector<Poly>& out) {
  int n = f.deg(), p = f.p;
  if (n == d) { out.push_back(monic(f)); return; }
  for (;;) {
    Poly a = random_poly(p, n - 1, rng);
    Poly g;
    if (p == 2) {
      // trace map over F_{2^d}
      Poly t = a % f, s = t;
      for (int i = 1; i < d; ++i) {
        s = (s * s) % f;
        t = t + s;
      }
      g = gcd(t, f);
    } else {
      // (p^d - 1)/2 is odd-characteristic CZ; degrees stay small enough for 64 bits
      if (d * 3 > 62) throw MathError("equal-degree exponent out of range");
      uint64_t e = 1;
      for (int i = 0; i < d; ++i) e *= uint64_t(p);
      e = (e - 1) / 2;
      g = gcd(pow_mod(a, e, f) - Poly::one(p), f);
    }
    if (g.deg() > 0 && g.deg() < n) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(exact_div(f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace detail

// full factorization, deterministic order; the internal randomness is seeded
// so two runs agree coefficient for coefficient
inline std::vector<PolyFactor> factor(const Poly& f_in, uint64_t seed = 0x9e3779b97f4a7c15ULL) {
  if (f_in.is_zero()) throw MathError("factor of zero polynomial");
  std::vector<PolyFactor> result;
  Poly f = monic(f_in);
  if (f.deg() < 1) return result;
  std::vector<std::pair<Poly, int>> sqf;
  detail::squarefree_rec(f, 1, sqf);
  std::mt19937_64 rng(seed);
  for (auto& [g, mult] : sqf) {
    // distinct-degree split of the squarefree g
    Poly rem = g;
    Poly x = Poly::x(f.p);
    Poly t = x % rem;
    int d = 0;
    while (rem.deg() >= 1) {
      ++d;
      if (2 * d > rem.deg()) {
        result.push_back({monic(rem), mult});
        break;
      }
      t = pow_mod(t, uint64_t(f.p), rem);
      Poly h = gcd(t - x % rem, rem);
      if (h.deg() > 0) {
        std::vector<Poly> pieces;
        detail::equal_degree_split(h, d, rng, pieces);
        for (auto& irr : pieces) result.push_back({irr, mult});
        rem = exact_div(rem, h);
        t = t % rem;
      }
    }
  }
  std::sort(result.begin(), result.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (!(a.f == b.f)) return a.f < b.f;
    return a.mult < b.mult;
  });
  return result;
}

inline std::vector<uint8_t> roots_in_prime_field(const Poly& f) {
  std::vector<uint8_t> out;
  for (int x = 0; x < f.p; ++x)
    if (eval(f, uint8_t(x)) == 0) out.push_back(uint8_t(x));
  return out;
}

}  // namespace hayes

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Factorization of univariate polynomials over the prime fields F_p,
// p in {2, 3, 5, 7}: squarefree reduction, distinct-degree splitting, then
// Cantor-Zassenhaus equal-degree splitting. Deterministic across runs: the
// random source is seeded from the input polynomial.

#include <algorithm>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "fppoly.hpp"

namespace hayes {

namespace detail {

// inverse of spread: f(x^p) -> f(x); valid exactly when f' == 0
inline Poly unspread(const Poly& a, int stride) {
  Poly r(a.p);
  r.c.resize(a.c.size() / stride + 1, 0);
  for (size_t i = 0; i * stride < a.c.size(); ++i) r.c[i] = a.c[i * stride];
  r.trim();
  return r;
}

// deterministic ordering used for factor lists
inline bool poly_less(const Poly& a, const Poly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  for (int i = a.deg(); i >= 0; --i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  return false;
}

// r^(1 + p + p^2 + ... + p^(d-1)) mod g; the norm-form exponent whose
// (p-1)/2 power realizes r^((p^d - 1)/2) without a wide integer
inline Poly norm_chain(const Poly& r, const Poly& g, int d) {
  Poly acc = r % g, cur = acc;
  for (int i = 1; i < d; ++i) {
    cur = pow_mod(cur, uint64_t(g.p), g);
    acc = (acc * cur) % g;
  }
  return acc;
}

// sum r^(2^i), i < d, mod g; kernel of the Artin-Schreier splitting map
inline Poly trace_chain(const Poly& r, const Poly& g, int d) {
  Poly acc = r % g, cur = acc;
  for (int i = 1; i < d; ++i) {
    cur = (cur * cur) % g;
    acc = acc + cur;
  }
  return acc;
}

inline void equal_degree(const Poly& g, int d, std::mt19937_64& rng,
                         std::vector<Poly>& out) {
  if (g.deg() == d) {
    out.push_back(monic(g));
    return;
  }
  const int p = g.p;
  for (;;) {
    Poly r = random_poly(p, int(rng() % uint64_t(g.deg())), rng);
    Poly t = gcd(r, g);
    if (t.deg() == 0) {
      if (p == 2) {
        t = gcd(trace_chain(r, g, d), g);
      } else {
        Poly s = pow_mod(norm_chain(r, g, d), uint64_t((p - 1) / 2), g);
        t = gcd(s - Poly::one(p), g);
      }
    }
    if (t.deg() > 0 && t.deg() < g.deg()) {
      equal_degree(t, d, rng, out);
      equal_degree(exact_div(g, t), d, rng, out);
      return;
    }
  }
}

// irreducible factors of a squarefree monic v
inline void distinct_degree(Poly v, std::mt19937_64& rng, std::vector<Poly>& out) {
  const int p = v.p;
  Poly h = Poly::x(p) % v;
  int d = 0;
  while (v.deg() > 0) {
    ++d;
    if (2 * d > v.deg()) {
      out.push_back(monic(v));
      return;
    }
    h = pow_mod(h, uint64_t(p), v);
    Poly g = gcd(h - Poly::x(p), v);
    if (g.deg() > 0) {
      equal_degree(g, d, rng, out);
      v = exact_div(v, g);
      h = h % v;
    }
  }
}

// distinct monic irreducible factors, multiplicities dropped
inline void distinct_factors(Poly f, std::mt19937_64& rng, std::vector<Poly>& out) {
  while (f.deg() > 0) {
    Poly df = derivative(f);
    if (df.is_zero()) {
      f = unspread(f, f.p);
      continue;
    }
    Poly u = gcd(f, df);
    distinct_degree(exact_div(f, u), rng, out);
    f = u;
  }
}

}  // namespace detail

// monic irreducible factors with multiplicities, sorted by degree then by
// coefficients; the scalar leading unit is discarded
inline std::vector<std::pair<Poly, int>> factor_poly(const Poly& f) {
  if (f.is_zero()) throw MathError("cannot factor the zero polynomial");
  uint64_t seed = 0x9e3779b97f4a7c15ull ^ uint64_t(f.deg());
  for (size_t i = 0; i < f.c.size(); ++i) seed = seed * 1099511628211ull + f.c[i];
  std::mt19937_64 rng(seed);
  std::vector<Poly> irr;
  detail::distinct_factors(monic(f), rng, irr);
  std::sort(irr.begin(), irr.end(), detail::poly_less);
  irr.erase(std::unique(irr.begin(), irr.end(),
                        [](const Poly& a, const Poly& b) { return a == b; }),
            irr.end());
  std::vector<std::pair<Poly, int>> out;
  Poly rest = monic(f);
  for (const auto& q : irr) {
    int e = 0;
    while ((rest % q).is_zero()) {
      rest = exact_div(rest, q);
      ++e;
    }
    out.emplace_back(q, e);
  }
  return out;
}

}  // namespace hayes

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Bridge from tower scalars to the quadratic order carrying the ideal
// arithmetic. Two presentations are recognized from the tower's generators:
//
//   * an eta generator with eta^2 + F2 eta = F1: the order A itself,
//     x <-> theta, w <-> eta;
//   * generators s, u with s^2 = theta and s u = eta (so u^2 = F1/theta,
//     needing F2 = 0 and theta | F1): the order F_p[s, u] of the class
//     field side, x <-> s, w <-> u.
//
// Scalars map in by spreading theta-polynomials through x (or x^2) and
// splitting keys on the w generator; anything involving other generators
// has no exact ideal presentation and is rejected.

#include <utility>

#include "quadring.hpp"
#include "ringelem.hpp"

namespace hayes {

struct TowerRingView {
  const ScalarTower* T;
  const FuncRing* F;
  QuadRing R;
  int w_index;  // generator carried to w
  int s_index;  // generator carried to x, -1 when x <-> theta

  bool is_extension() const { return s_index >= 0; }

  QuadElem to_ring(const TowerElem& a) const {
    if (a.is_zero()) return R.zero();
    Poly u = Poly::zero(R.p), v = Poly::zero(R.p);
    for (const auto& [k, f] : a.num) {
      for (int i = 0; i < T->generator_count(); ++i) {
        if (i == w_index || i == s_index) continue;
        if (detail::key_exp(k, i) != 0)
          throw MathError("scalar lies outside the function part of the tower");
      }
      int ew = detail::key_exp(k, w_index);
      if (s_index < 0) {
        if (ew) v = v + f;
        else u = u + f;
        continue;
      }
      Poly g = shift_up(spread(f, 2), size_t(detail::key_exp(k, s_index)));
      if (ew) v = v + g;
      else u = u + g;
    }
    Poly den = s_index < 0 ? a.den : spread(a.den, 2);
    return R.make(std::move(u), std::move(v), std::move(den));
  }

  FracIdeal principal(const TowerElem& a) const {
    return R.ideal_from_gens({to_ring(a)});
  }

  bool is_integral_scalar(const TowerElem& a) const {
    if (a.is_zero()) return true;
    return R.is_integral(principal(a));
  }
};

// Locate the ideal-bearing order for this ring's tower; see the header
// comment for the recognized presentations.
inline TowerRingView ring_view(const FuncRing& F) {
  if (F.curve.kind != CurveKind::hyperelliptic)
    throw MathError("ideal presentation needs the hyperelliptic model");
  const ScalarTower& T = *F.tower;
  const TowerElem& eta = F.eta_image();
  for (int i = 0; i < T.generator_count(); ++i) {
    if (T.generator(i).constant) continue;
    if (T.gen(i) == eta)
      return TowerRingView{&T, &F, QuadRing(T.p, F.curve.F1, F.curve.F2), i, -1};
  }
  int is = -1;
  for (int i = 0; i < T.generator_count(); ++i)
    if (!T.generator(i).constant && T.gen(i) * T.gen(i) == T.theta()) is = i;
  if (is >= 0) {
    for (int i = 0; i < T.generator_count(); ++i) {
      if (i == is || T.generator(i).constant) continue;
      if (T.gen(is) * T.gen(i) != eta) continue;
      if (!F.curve.F2.is_zero() || F.curve.F1.coeff(0) != 0)
        throw MathError("no exact ideal presentation for this tower");
      Poly m = F.curve.F1;
      m.c.erase(m.c.begin());  // F1 / theta
      if (T.gen(i) * T.gen(i) != T.from_poly(m))
        throw MathError("no exact ideal presentation for this tower");
      Poly G1 = spread(F.curve.F1, 2);
      G1.c.erase(G1.c.begin(), G1.c.begin() + 2);  // F1(x^2) / x^2
      return TowerRingView{&T, &F, QuadRing(T.p, std::move(G1), Poly::zero(T.p)),
                           i, is};
    }
  }
  throw MathError("no exact ideal presentation for this tower");
}

}  // namespace hayes

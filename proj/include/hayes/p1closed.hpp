// SPDX-License-Identifier: Apache-2.0
#pragma once

// Hayes modules on the projective line whose infinite place has degree two or
// more, sitting at the zero c of an irreducible polynomial. The shtuka
// function is f = U (t - theta) / ((c - theta)(t - c^q)) for a unit root U
// pinned by U^M = (c - theta)^{M-1} / prod_{k=1}^{d-1} (c - theta^{q^k}),
// M = (q^d - 1)/(q - 1). The tower adjoins the integral combination
// W = U prod_{k=1}^{d-1} (c - theta^{q^k}) instead, whose relation
// W^M = ((c - theta) prod)^{M-1} has no denominator; U = W / prod is then an
// exact fraction. The exponential and logarithm coefficients admit closed
// products, and the valuation at the place "degree in theta" can be read off
// monomial by monomial because U is a unit there.

#include <limits>
#include <utility>
#include <vector>

#include "shtuka.hpp"

namespace hayes {

// power by repeated squaring; monomial reduction in the tower keeps the
// generator exponents in normal range throughout
inline TowerElem scalar_pow(const ScalarTower& T, TowerElem b, long e) {
  if (e < 0) throw MathError("negative scalar power");
  TowerElem r = T.one();
  while (e > 0) {
    if (e & 1) r = T.mul(r, b);
    e >>= 1;
    if (e) b = T.mul(b, b);
  }
  return r;
}

struct P1ClosedForm {
  const FuncRing* R;
  long M;       // (q^{d_inf} - 1)/(q - 1)
  int w_index;  // tower index of the adjoined root W
  TowerElem G;  // prod_{k=1}^{d_inf - 1} (c - theta^{q^k})
  TowerElem U;  // W / G, a unit at the place "degree in theta"
};

// Adjoin the unit root to the tower and assemble the closed-form data. The
// tower only accepts integral relations, hence the G-multiple of U.
inline P1ClosedForm p1_closed_form(const FuncRing& R, ScalarTower& T) {
  if (R.curve.kind != CurveKind::p1)
    throw MathError("closed forms need the projective line model");
  if (R.tower != &T) throw mixed_fields();
  for (int i = 0; i < T.generator_count(); ++i)
    if (T.generator(i).name == "W")
      throw MathError("the tower already carries a unit root");
  int d = R.curve.d_inf;
  long M = 0, pw = 1;
  for (int k = 0; k < d; ++k) {
    M += pw;
    // monomial keys hold one byte per generator, so exponent sums during
    // multiplication must stay below 256
    if (M > 128) throw MathError("infinity degree too large for the tower");
    pw *= long(T.q);
  }
  TowerElem th = T.theta();
  TowerElem G = T.one();
  for (int k = 1; k < d; ++k) G = G * (R.c_image() - T.twist(th, k));
  TowerElem rhs = scalar_pow(T, (R.c_image() - th) * G, M - 1);
  std::vector<TowerElem> rel(size_t(M), T.zero());
  rel[0] = T.neg(rhs);
  int w_index = T.add_generator("W", rel);
  TowerElem U = T.gen(w_index) / G;
  return P1ClosedForm{&R, M, w_index, G, std::move(U)};
}

// Shtuka data for the closed-form module. The divisor is empty (genus zero);
// nu = U (t - theta)/(c - theta) and delta = t - c^q. The normalization
// tilde_sgn(f f^(1) ... f^(d-1)) = 1 is verified, which certifies the unit
// root relation against the sign conventions of the ring.
inline ShtukaData p1_shtuka(const P1ClosedForm& P) {
  const FuncRing& R = *P.R;
  const ScalarTower& T = *R.tower;
  TowerElem th = T.theta();
  TowerElem s = P.U / (R.c_image() - th);
  RingElem nu(&R, TPoly(&T, {T.neg(s * th), s}), TPoly::zero(&T), TPoly::one(&T));
  RingElem delta = R.from_tpoly(
      TPoly::linear(T.neg(T.twist(R.c_image(), 1)), T.one()));
  RingElem f(&R, nu.u, TPoly::zero(&T), delta.u);
  RingElem prod = R.one();
  for (int k = 0; k < R.curve.d_inf; ++k) prod = prod * R.twist(f, k);
  if (R.tilde_sgn(prod) != T.one())
    throw MathError("unit root does not normalize the shtuka function");
  return ShtukaData{&R, {}, {}, std::move(nu), std::move(delta)};
}

// 1 / c_minpoly(t): the smallest ring element whose only pole sits at the
// infinite place; its image at Xi is 1 / c_minpoly(theta)
inline RingElem p1_operand(const P1ClosedForm& P) {
  const FuncRing& R = *P.R;
  const ScalarTower& T = *R.tower;
  const Poly& m = R.curve.c_minpoly;
  TPoly den(&T);
  den.c.reserve(m.c.size());
  for (size_t i = 0; i < m.c.size(); ++i) den.c.push_back(T.from_int(m.c[i]));
  den.trim();
  return RingElem(&R, TPoly::one(&T), TPoly::zero(&T), std::move(den));
}

// Closed products for the coefficient streams: with n' = (q^n - 1)/(q - 1)
// and N = (q^{n+1} - 1)/(q - 1),
//   e_n = -U^{-n'} (c-theta)^N prod_{i=1}^{n-1} (theta^{q^i} - c)^{q^{n-i}}
//                             / prod_{k=1}^{n} (theta^{q^k} - theta)^{q^{n-k}},
//   l_n = -U^{-n'} (c-theta)^N prod_{i=1}^{n-1} (theta - c^{q^i})
//                             / prod_{k=1}^{n} (theta - theta^{q^k}).
// U^{-n'} is carried as G^{n'} / W^{n'}; the inner powers of the exponential
// factors collapse through x^{q^j}, e.g. (theta^{q^i}-c)^{q^{n-i}} =
// theta^{q^n} - c^{q^{n-i}}, so every factor is a plain twist.
inline ScalarFrac p1_closed_coeffs(const P1ClosedForm& P, CoeffStream::Kind kind,
                                   int n) {
  const FuncRing& R = *P.R;
  const ScalarTower& T = *R.tower;
  if (n < 0) throw MathError("stream index must be nonnegative");
  if (n == 0) return ScalarFrac::one(&T);
  long qq = long(T.q);
  long qn = 1;
  for (int i = 0; i < n; ++i) {
    if (qn > std::numeric_limits<long>::max() / (qq * qq))
      throw MathError("closed form index out of range");
    qn *= qq;
  }
  long nprime = (qn - 1) / (qq - 1);
  long N = qq * nprime + 1;
  TowerElem th = T.theta();
  TowerElem c = R.c_image();
  TowerElem num = T.neg(scalar_pow(T, c - th, N));
  num = num * scalar_pow(T, P.G, nprime);
  TowerElem den = scalar_pow(T, T.gen(P.w_index), nprime);
  if (kind == CoeffStream::Kind::exp) {
    TowerElem thn = T.twist(th, n);
    for (int i = 1; i < n; ++i) num = num * (thn - T.twist(c, n - i));
    for (int k = 1; k <= n; ++k) den = den * (thn - T.twist(th, n - k));
  } else {
    for (int i = 1; i < n; ++i) num = num * (th - T.twist(c, i));
    for (int k = 1; k <= n; ++k) den = den * (th - T.twist(th, k));
  }
  return ScalarFrac{std::move(num), std::move(den)};
}

namespace detail {

// Valuation at the place "degree in theta", in units of that place: theta
// carries -1, constants 0, and the unit root generator -(M-1) from its
// integral relation. The minimum over monomials is exact when a single power
// of W achieves it; distinct powers of c at one W power stay independent in
// the residue field, distinct W powers need not, so a tie across W powers is
// refused rather than resolved.
inline long deg_theta_val(const P1ClosedForm& P, const TowerElem& a) {
  const ScalarTower& T = *P.R->tower;
  if (a.is_zero()) throw MathError("valuation of zero");
  long wval = -(P.M - 1);
  long best = std::numeric_limits<long>::max();
  int best_w = -1;
  bool mixed = false;
  for (const auto& [k, f] : a.num) {
    long val = -long(f.deg());
    for (int i = 0; i < T.generator_count(); ++i) {
      int e = key_exp(k, i);
      if (!e) continue;
      if (i == P.w_index) val += long(e) * wval;
      else if (!T.generator(i).constant)
        throw MathError("valuation undefined for this generator");
    }
    int we = key_exp(k, P.w_index);
    if (val < best) {
      best = val;
      best_w = we;
      mixed = false;
    } else if (val == best && we != best_w) {
      mixed = true;
    }
  }
  if (mixed)
    throw MathError("degree valuation is ambiguous across unit root powers");
  return best + a.den.deg();
}

}  // namespace detail

inline long deg_theta_valuation(const P1ClosedForm& P, const ScalarFrac& x) {
  return detail::deg_theta_val(P, x.num) - detail::deg_theta_val(P, x.den);
}

}  // namespace hayes

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Twisted polynomials sum_i c_i tau^i over a scalar tower, with the
// commutation rule tau c = c^q tau. Multiplication twists the right factor's
// coefficients; right division only ever applies forward twists to the
// divisor's coefficients, so it works over towers where inverse Frobenius is
// not available.

#include <vector>

#include "tower.hpp"

namespace hayes {

struct TwistedPoly {
  const ScalarTower* T = nullptr;
  std::vector<TowerElem> c;  // c[i] multiplies tau^i, no trailing zeros

  explicit TwistedPoly(const ScalarTower* T_) : T(T_) {}
  TwistedPoly(const ScalarTower* T_, std::vector<TowerElem> coeffs)
      : T(T_), c(std::move(coeffs)) {
    trim();
  }

  static TwistedPoly zero(const ScalarTower* T) { return TwistedPoly(T); }
  static TwistedPoly one(const ScalarTower* T) { return TwistedPoly(T, {T->one()}); }
  static TwistedPoly constant(const TowerElem& a) { return TwistedPoly(a.T, {a}); }

  bool is_zero() const { return c.empty(); }
  int deg() const { return int(c.size()) - 1; }
  const TowerElem& lead() const { return c.back(); }
  TowerElem coeff(size_t i) const { return i < c.size() ? c[i] : T->zero(); }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
};

inline TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b) {
  TwistedPoly r(a.T);
  size_t n = std::max(a.c.size(), b.c.size());
  r.c.reserve(n);
  for (size_t i = 0; i < n; ++i) r.c.push_back(a.coeff(i) + b.coeff(i));
  r.trim();
  return r;
}

inline TwistedPoly operator-(const TwistedPoly& a) {
  TwistedPoly r(a.T);
  r.c.reserve(a.c.size());
  for (auto& x : a.c) r.c.push_back(-x);
  return r;
}

inline TwistedPoly operator-(const TwistedPoly& a, const TwistedPoly& b) {
  return a + (-b);
}

inline TwistedPoly tw_mul(const TwistedPoly& a, const TwistedPoly& b) {
  if (a.is_zero() || b.is_zero()) return TwistedPoly::zero(a.T);
  TwistedPoly r(a.T);
  r.c.assign(a.c.size() + b.c.size() - 1, a.T->zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j].is_zero()) continue;
      r.c[i + j] = r.c[i + j] + a.c[i] * a.T->twist(b.c[j], int(i));
    }
  }
  r.trim();
  return r;
}

inline TwistedPoly operator*(const TwistedPoly& a, const TwistedPoly& b) {
  return tw_mul(a, b);
}

inline bool operator==(const TwistedPoly& a, const TwistedPoly& b) {
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] != b.c[i]) return false;
  return true;
}
inline bool operator!=(const TwistedPoly& a, const TwistedPoly& b) { return !(a == b); }

// apply as an F_q-linear operator: z -> sum_i c_i z^{q^i}
inline TowerElem tw_apply(const TwistedPoly& a, const TowerElem& z) {
  TowerElem r = a.T->zero(), zq = z;
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (i > 0) zq = a.T->twist(zq, 1);
    if (!a.c[i].is_zero()) r = r + a.c[i] * zq;
  }
  return r;
}

// right division: a = q b + r with deg r < deg b. Each step clears the top
// term via q_k = a_top / b_top^{q^k}, so only forward twists of b are needed.
inline void tw_divrem(const TwistedPoly& a, const TwistedPoly& b, TwistedPoly& quo,
                      TwistedPoly& rem) {
  if (b.is_zero()) throw division_by_zero();
  const ScalarTower* T = a.T;
  quo = TwistedPoly::zero(T);
  rem = a;
  int m = b.deg();
  if (rem.deg() >= m) quo.c.assign(size_t(rem.deg() - m) + 1, T->zero());
  while (rem.deg() >= m) {
    int k = rem.deg() - m;
    TowerElem qk = rem.lead() / T->twist(b.lead(), k);
    quo.c[size_t(k)] = qk;
    TwistedPoly step(T);
    step.c.assign(size_t(k) + 1, T->zero());
    step.c[size_t(k)] = qk;
    rem = rem - tw_mul(step, b);
    if (rem.deg() >= m + k) throw MathError("right division failed to reduce degree");
  }
  quo.trim();
}

// right gcd: the monic generator of the left ideal of common right divisors
inline TwistedPoly tw_rgcd(TwistedPoly a, TwistedPoly b) {
  const ScalarTower* T = a.T;
  while (!b.is_zero()) {
    TwistedPoly q(T), r(T);
    tw_divrem(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero() && !(a.lead() == T->one()))
    a = tw_mul(TwistedPoly::constant(T->inv(a.lead())), a);
  return a;
}

inline std::string tw_to_string(const TwistedPoly& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (size_t i = a.c.size(); i-- > 0;) {
    if (a.c[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string coef = a.T->to_string(a.c[i]);
    bool triv = coef == "1";
    if (i == 0) s += coef;
    else {
      if (!triv) s += "(" + coef + ")*";
      s += "tau";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace hayes

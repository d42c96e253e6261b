// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense polynomials in one commuting variable over a scalar tower. These sit
// inside ring elements (the variable is t) and stay tiny in degree; all the
// heavy lifting happens inside the TowerElem coefficients.

#include <vector>

#include "tower.hpp"

namespace hayes {

struct TPoly {
  const ScalarTower* T = nullptr;
  std::vector<TowerElem> c;  // low degree first, no trailing zeros

  explicit TPoly(const ScalarTower* T_) : T(T_) {}
  TPoly(const ScalarTower* T_, std::vector<TowerElem> coeffs) : T(T_), c(std::move(coeffs)) {
    trim();
  }

  static TPoly zero(const ScalarTower* T) { return TPoly(T); }
  static TPoly one(const ScalarTower* T) { return TPoly(T, {T->one()}); }
  static TPoly constant(const TowerElem& a) { return TPoly(a.T, {a}); }
  static TPoly linear(const TowerElem& c0, const TowerElem& c1) {
    return TPoly(c0.T, {c0, c1});
  }

  bool is_zero() const { return c.empty(); }
  int deg() const { return int(c.size()) - 1; }
  const TowerElem& lead() const { return c.back(); }
  TowerElem coeff(size_t i) const { return i < c.size() ? c[i] : T->zero(); }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
};

inline TPoly operator+(const TPoly& a, const TPoly& b) {
  TPoly r(a.T);
  size_t n = std::max(a.c.size(), b.c.size());
  r.c.reserve(n);
  for (size_t i = 0; i < n; ++i) r.c.push_back(a.coeff(i) + b.coeff(i));
  r.trim();
  return r;
}

inline TPoly operator-(const TPoly& a) {
  TPoly r(a.T);
  r.c.reserve(a.c.size());
  for (auto& x : a.c) r.c.push_back(-x);
  return r;
}

inline TPoly operator-(const TPoly& a, const TPoly& b) { return a + (-b); }

inline TPoly operator*(const TPoly& a, const TPoly& b) {
  if (a.is_zero() || b.is_zero()) return TPoly::zero(a.T);
  TPoly r(a.T);
  r.c.assign(a.c.size() + b.c.size() - 1, a.T->zero());
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
  r.trim();
  return r;
}

inline TPoly operator*(const TPoly& a, const TowerElem& s) {
  TPoly r(a.T);
  r.c.reserve(a.c.size());
  for (auto& x : a.c) r.c.push_back(x * s);
  r.trim();
  return r;
}

inline bool operator==(const TPoly& a, const TPoly& b) {
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] != b.c[i]) return false;
  return true;
}
inline bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }

inline void tp_divrem(const TPoly& a, const TPoly& b, TPoly& quo, TPoly& rem) {
  if (b.is_zero()) throw division_by_zero();
  quo = TPoly::zero(a.T);
  rem = a;
  if (a.deg() < b.deg()) return;
  TowerElem linv = a.T->inv(b.lead());
  quo.c.assign(a.deg() - b.deg() + 1, a.T->zero());
  while (!rem.is_zero() && rem.deg() >= b.deg()) {
    int k = rem.deg() - b.deg();
    TowerElem f = rem.lead() * linv;
    quo.c[k] = quo.c[k] + f;
    for (int i = 0; i <= b.deg(); ++i)
      rem.c[k + i] = rem.c[k + i] - f * b.c[i];
    rem.trim();
  }
  quo.trim();
}

inline TPoly tp_exact_div(const TPoly& a, const TPoly& b) {
  TPoly q(a.T), r(a.T);
  tp_divrem(a, b, q, r);
  if (!r.is_zero()) throw inexact_division("t-polynomial");
  return q;
}

inline TowerElem tp_eval(const TPoly& a, const TowerElem& x) {
  TowerElem acc = a.T->zero();
  for (size_t i = a.c.size(); i-- > 0;) acc = acc * x + a.c[i];
  return acc;
}

inline TPoly tp_twist(const TPoly& a, int n) {
  TPoly r(a.T);
  r.c.reserve(a.c.size());
  for (auto& x : a.c) r.c.push_back(a.T->twist(x, n));
  return r;
}

// order of vanishing at x = pt, together with the cofactor value h/(t-pt)^ord at pt
inline int tp_ord_at(const TPoly& a, const TowerElem& pt, TowerElem* cofactor_value = nullptr) {
  if (a.is_zero()) throw MathError("order of the zero polynomial");
  TPoly cur = a;
  TPoly lin(a.T, {-pt, a.T->one()});
  int ord = 0;
  for (;;) {
    TowerElem v = tp_eval(cur, pt);
    if (!v.is_zero()) {
      if (cofactor_value) *cofactor_value = v;
      return ord;
    }
    cur = tp_exact_div(cur, lin);
    ++ord;
  }
}

inline std::string tp_to_string(const TPoly& a, const std::string& var) {
  if (a.is_zero()) return "0";
  std::string s;
  for (int i = a.deg(); i >= 0; --i) {
    if (a.c[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string coef = a.T->to_string(a.c[i]);
    if (i == 0) { s += coef; continue; }
    std::string pow = var + (i > 1 ? "^" + std::to_string(i) : "");
    if (coef == "1") s += pow;
    else s += "(" + coef + ")*" + pow;
  }
  return s;
}

}  // namespace hayes

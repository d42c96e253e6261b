// SPDX-License-Identifier: Apache-2.0
#pragma once

// Elements of the coordinate ring of the curve (variables t, y) with scalar
// coefficients from a tower, in the canonical form (u(t) + v(t) y) / den(t),
// reduced by y^2 = F1 - F2 y. The mirrored ring A (variables theta, eta) is
// the same structure with its evaluation at Xi sending t to theta and y to
// eta. Degree and sign at infinity follow deg t = 2, deg y = 2g+1 for the
// hyperelliptic model; the P1 model reads signs off the order of vanishing
// at t = c instead.

#include <optional>

#include "curve.hpp"
#include "tpoly.hpp"

namespace hayes {

class FuncRing;

struct RingElem {
  const FuncRing* R = nullptr;
  TPoly u, v, den;

  RingElem(const FuncRing* R_, TPoly u_, TPoly v_, TPoly den_)
      : R(R_), u(std::move(u_)), v(std::move(v_)), den(std::move(den_)) {}

  bool is_zero() const { return u.is_zero() && v.is_zero(); }
};

class FuncRing {
 public:
  CurveModel curve;
  const ScalarTower* tower;

  // images of the mirrored generators inside the scalar tower: evaluation at
  // Xi sends t to theta and y to eta_img; p1 mode carries the constant c
  FuncRing(CurveModel cm, const ScalarTower* T, TowerElem eta_img, TowerElem c_img)
      : curve(std::move(cm)), tower(T), eta_(std::move(eta_img)), c_(std::move(c_img)),
        F1T_(T), F2T_(T) {
    if (curve.p != T->p || curve.q != T->q)
      throw MathError("curve and tower disagree on the constant field");
    F1T_ = lift(curve.F1);
    F2T_ = lift(curve.F2);
    if (curve.kind == CurveKind::hyperelliptic) {
      // eta must satisfy the mirrored curve equation
      TowerElem th = T->theta();
      TowerElem lhs = eta_ * eta_ + tp_eval(F2T_, th) * eta_ - tp_eval(F1T_, th);
      if (!lhs.is_zero())
        throw MathError("eta image does not satisfy the curve relation");
    }
    if (curve.kind == CurveKind::p1) {
      Poly mp = curve.c_minpoly;
      TowerElem val = T->zero();
      for (int i = mp.deg(); i >= 0; --i)
        val = val * c_ + T->from_int(mp.c[i]);
      if (!val.is_zero())
        throw MathError("c image does not satisfy the infinity minimal polynomial");
      // tilde_sgn(t - c) = 1 / prod_{k=1}^{d-1} (c - c^{q^k})
      TowerElem prod = T->one();
      for (int k = 1; k < curve.d_inf; ++k)
        prod = prod * (c_ - T->twist(c_, k));
      sgn_tc_ = T->inv(prod);
    }
  }

  const TowerElem& eta_image() const { return eta_; }
  const TowerElem& c_image() const { return c_; }

  // ---- constructors ----

  RingElem zero() const { return RingElem(this, TPoly::zero(tower), TPoly::zero(tower), TPoly::one(tower)); }
  RingElem one() const { return from_scalar(tower->one()); }

  RingElem from_scalar(const TowerElem& s) const {
    return RingElem(this, TPoly::constant(s), TPoly::zero(tower), TPoly::one(tower));
  }

  RingElem from_tpoly(TPoly f) const {
    return RingElem(this, std::move(f), TPoly::zero(tower), TPoly::one(tower));
  }

  RingElem t() const {
    return from_tpoly(TPoly(tower, {tower->zero(), tower->one()}));
  }

  RingElem y() const {
    if (curve.kind != CurveKind::hyperelliptic)
      throw MathError("this curve model has no y coordinate");
    return RingElem(this, TPoly::zero(tower), TPoly::one(tower), TPoly::one(tower));
  }

  // ---- arithmetic ----

  RingElem add(const RingElem& a, const RingElem& b) const {
    check(a); check(b);
    if (a.den == b.den)
      return RingElem(this, a.u + b.u, a.v + b.v, a.den);
    return RingElem(this, a.u * b.den + b.u * a.den, a.v * b.den + b.v * a.den,
                    a.den * b.den);
  }

  RingElem neg(const RingElem& a) const { return RingElem(this, -a.u, -a.v, a.den); }

  RingElem sub(const RingElem& a, const RingElem& b) const { return add(a, neg(b)); }

  RingElem mul(const RingElem& a, const RingElem& b) const {
    check(a); check(b);
    TPoly vv = a.v * b.v;
    TPoly u = a.u * b.u + vv * F1T_;
    TPoly v = a.u * b.v + a.v * b.u - vv * F2T_;
    return RingElem(this, std::move(u), std::move(v), a.den * b.den);
  }

  RingElem mul_scalar(const RingElem& a, const TowerElem& s) const {
    return RingElem(this, a.u * s, a.v * s, a.den);
  }

  // hyperelliptic conjugate: y -> -F2 - y
  RingElem conj(const RingElem& a) const {
    check(a);
    return RingElem(this, a.u - a.v * F2T_, -a.v, a.den);
  }

  // exact division a / b inside the ring (denominators ride along); throws
  // when b does not divide a
  RingElem divide_exact(const RingElem& a, const RingElem& b) const {
    check(a); check(b);
    if (b.is_zero()) throw division_by_zero();
    // scale a by b's denominator, then divide by the integral part of b
    TPoly au = a.u * b.den, av = a.v * b.den;
    if (b.v.is_zero()) {
      return RingElem(this, tp_exact_div(au, b.u), tp_exact_div(av, b.u), a.den);
    }
    RingElem scaled(this, std::move(au), std::move(av), a.den);
    RingElem bint(this, b.u, b.v, TPoly::one(tower));
    RingElem num = mul(scaled, conj(bint));
    RingElem nrm = mul(bint, conj(bint));
    if (!nrm.v.is_zero()) throw MathError("norm has a y part");
    return RingElem(this, tp_exact_div(num.u, nrm.u), tp_exact_div(num.v, nrm.u),
                    num.den);
  }

  bool eq(const RingElem& a, const RingElem& b) const {
    check(a); check(b);
    if (a.den == b.den) return a.u == b.u && a.v == b.v;
    return a.u * b.den == b.u * a.den && a.v * b.den == b.v * a.den;
  }

  // cancel the denominator into the numerator when exactly divisible
  RingElem reduce(const RingElem& a) const {
    if (a.den.deg() < 1) {
      if (a.den.c[0] == tower->one()) return a;
      TowerElem inv = tower->inv(a.den.c[0]);
      return RingElem(this, a.u * inv, a.v * inv, TPoly::one(tower));
    }
    TPoly qu(tower), ru(tower), qv(tower), rv(tower);
    tp_divrem(a.u, a.den, qu, ru);
    tp_divrem(a.v, a.den, qv, rv);
    if (ru.is_zero() && rv.is_zero())
      return RingElem(this, std::move(qu), std::move(qv), TPoly::one(tower));
    return a;
  }

  // ---- twisting and evaluation ----

  RingElem twist(const RingElem& a, int n) const {
    check(a);
    if (n == 0) return a;
    return RingElem(this, tp_twist(a.u, n), tp_twist(a.v, n), tp_twist(a.den, n));
  }

  TowerElem eval(const RingElem& a, const TowerElem& x, const TowerElem& yv) const {
    check(a);
    TowerElem n = tp_eval(a.u, x) + tp_eval(a.v, x) * yv;
    TowerElem d = tp_eval(a.den, x);
    if (d.is_zero()) throw MathError("evaluation hits a pole");
    return n / d;
  }

  // substitute t -> theta^{q^n}, y -> eta^{q^n}
  TowerElem eval_xi(const RingElem& a, int n) const {
    return eval(a, tower->twist(tower->theta(), n), tower->twist(eta_, n));
  }

  // ---- degree and sign at infinity ----

  std::optional<long> deg_inf(const RingElem& a) const {
    check(a);
    if (a.is_zero()) return std::nullopt;
    switch (curve.kind) {
      case CurveKind::hyperelliptic: {
        long n = part_deg(a.u, a.v);
        return n - 2L * a.den.deg();
      }
      case CurveKind::carlitz:
        require_no_y(a);
        return long(a.u.deg()) - a.den.deg();
      case CurveKind::p1: {
        require_no_y(a);
        int on = tp_ord_at(a.u, c_), od = tp_ord_at(a.den, c_);
        return -long(curve.d_inf) * (on - od);
      }
    }
    return std::nullopt;
  }

  TowerElem sgn(const RingElem& a) const { return tilde_sgn(a); }

  TowerElem tilde_sgn(const RingElem& a) const {
    check(a);
    if (a.is_zero()) return tower->zero();
    switch (curve.kind) {
      case CurveKind::hyperelliptic: {
        // the achiever among 2 deg u and 2 deg v + 2g+1 is unique by parity
        long du = a.u.is_zero() ? -1 : 2L * a.u.deg();
        long dv = a.v.is_zero() ? -1 : 2L * a.v.deg() + curve.deg_y();
        const TowerElem& lead = du > dv ? a.u.lead() : a.v.lead();
        return lead / a.den.lead();
      }
      case CurveKind::carlitz:
        require_no_y(a);
        return a.u.lead() / a.den.lead();
      case CurveKind::p1: {
        require_no_y(a);
        TowerElem nval = tower->zero(), dval = tower->zero();
        int on = tp_ord_at(a.u, c_, &nval), od = tp_ord_at(a.den, c_, &dval);
        TowerElem r = nval / dval;
        int e = on - od;
        for (int i = 0; i < e; ++i) r = r * sgn_tc_;
        for (int i = 0; i > e; --i) r = r / sgn_tc_;
        return r;
      }
    }
    return tower->zero();
  }

  std::string to_string(const RingElem& a) const {
    if (a.is_zero()) return "0";
    std::string s = tp_to_string(a.u, "t");
    if (!a.v.is_zero()) {
      if (!a.u.is_zero()) s += " + ";
      else s.clear();
      std::string vs = tp_to_string(a.v, "t");
      if (vs == "1") s += "y";
      else s += "(" + vs + ")*y";
    }
    if (a.den.deg() > 0 || !(a.den.c[0] == tower->one()))
      s = "(" + s + ") / (" + tp_to_string(a.den, "t") + ")";
    return s;
  }

  const TPoly& F1T() const { return F1T_; }
  const TPoly& F2T() const { return F2T_; }

 private:
  void check(const RingElem& a) const {
    if (a.R != this) throw MathError("elements from different rings");
  }

  void require_no_y(const RingElem& a) const {
    if (!a.v.is_zero()) throw MathError("this curve model has no y coordinate");
  }

  long part_deg(const TPoly& u, const TPoly& v) const {
    long du = u.is_zero() ? -1 : 2L * u.deg();
    long dv = v.is_zero() ? -1 : 2L * v.deg() + curve.deg_y();
    return std::max(du, dv);
  }

  TPoly lift(const Poly& f) const {
    TPoly r(tower);
    r.c.reserve(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) r.c.push_back(tower->from_int(f.c[i]));
    r.trim();
    return r;
  }

  TowerElem eta_, c_;
  TowerElem sgn_tc_ = TowerElem{};
  TPoly F1T_, F2T_;
};

inline RingElem operator+(const RingElem& a, const RingElem& b) { return a.R->add(a, b); }
inline RingElem operator-(const RingElem& a, const RingElem& b) { return a.R->sub(a, b); }
inline RingElem operator-(const RingElem& a) { return a.R->neg(a); }
inline RingElem operator*(const RingElem& a, const RingElem& b) { return a.R->mul(a, b); }
inline bool operator==(const RingElem& a, const RingElem& b) { return a.R->eq(a, b); }
inline bool operator!=(const RingElem& a, const RingElem& b) { return !a.R->eq(a, b); }

}  // namespace hayes

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Curve data underlying a Hayes module: a hyperelliptic affine model
// y^2 + F2(t) y = F1(t) with one infinite place (d_inf = 1), the Carlitz
// line, or the projective line with infinity moved to the place of an
// irreducible polynomial of degree d_inf.

#include "ffield.hpp"
#include "fppoly.hpp"

namespace hayes {

enum class CurveKind { hyperelliptic, carlitz, p1 };

struct CurveModel {
  CurveKind kind;
  int p = 0;       // characteristic; the constant field is F_q with q = p here
  uint64_t q = 0;
  int g = 0;       // genus (hyperelliptic only)
  Poly F1, F2;     // y^2 + F2 y - F1 = 0
  int d_inf = 1;
  Poly c_minpoly;  // p1 only: minimal polynomial of the constant c at infinity

  static CurveModel hyperelliptic(int q, Poly F1, Poly F2) {
    if (!is_small_prime(q))
      throw MathError("constant field size must be a small prime");
    CurveModel m;
    m.kind = CurveKind::hyperelliptic;
    m.p = q;
    m.q = uint64_t(q);
    if (F1.p != q || F2.p != q) throw mixed_fields();
    if (F1.deg() < 3 || F1.deg() % 2 == 0 || !F1.is_monic())
      throw MathError("F1 must be monic of odd degree 2g+1 with g >= 1");
    m.g = (F1.deg() - 1) / 2;
    if (F2.deg() > m.g) throw MathError("deg F2 must be at most g");
    m.F1 = std::move(F1);
    m.F2 = std::move(F2);
    check_smooth(m);
    return m;
  }

  static CurveModel carlitz(int q) {
    if (!is_small_prime(q))
      throw MathError("constant field size must be a small prime");
    CurveModel m;
    m.kind = CurveKind::carlitz;
    m.p = q;
    m.q = uint64_t(q);
    m.g = 0;
    m.F1 = Poly::zero(q);
    m.F2 = Poly::zero(q);
    return m;
  }

  static CurveModel p1(int q, Poly c_minpoly) {
    if (!is_small_prime(q))
      throw MathError("constant field size must be a small prime");
    CurveModel m;
    m.kind = CurveKind::p1;
    m.p = q;
    m.q = uint64_t(q);
    m.g = 0;
    if (c_minpoly.p != q) throw mixed_fields();
    if (c_minpoly.deg() < 2 || !c_minpoly.is_monic() ||
        !FiniteField::is_irreducible(c_minpoly))
      throw MathError("infinity place needs a monic irreducible of degree >= 2");
    m.d_inf = c_minpoly.deg();
    m.c_minpoly = std::move(c_minpoly);
    m.F1 = Poly::zero(q);
    m.F2 = Poly::zero(q);
    return m;
  }

  // deg t = 2 and deg y = 2g+1 at the (ramified) infinite place
  int deg_t() const { return 2; }
  int deg_y() const { return 2 * g + 1; }

 private:
  static void check_smooth(const CurveModel& m) {
    // a singular affine point solves F = dF/dt = dF/dy = 0 simultaneously
    if (m.p == 2) {
      // dF/dy = F2; on F2(t0) = 0 the remaining equations force
      // F1'(t0)^2 = F1(t0) F2'(t0)^2
      if (m.F2.is_zero())
        throw MathError("curve is singular: F2 = 0 in characteristic 2");
      Poly d1 = derivative(m.F1), d2 = derivative(m.F2);
      Poly cond = d1 * d1 - m.F1 * d2 * d2;
      if (!gcd(m.F2, cond).is_one())
        throw MathError("curve is singular");
    } else {
      // complete the square: (2y + F2)^2 = F2^2 + 4 F1 =: D, singular iff D
      // has a repeated root
      Poly D = m.F2 * m.F2 + m.F1 * 4;
      if (!gcd(D, derivative(D)).is_one())
        throw MathError("curve is singular");
    }
  }
};

}  // namespace hayes

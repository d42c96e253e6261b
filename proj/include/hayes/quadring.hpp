// SPDX-License-Identifier: Apache-2.0
#pragma once

// Fractional ideals of a quadratic order R = B[w]/(w^2 + G2 w - G1) over
// B = F_p[x]. The same machinery serves the coordinate ring A (x = theta,
// w = eta) and the quadratic extensions appearing as class fields (x = a
// root of theta, w derived). Ideals are kept in Hermite normal form
// (s/d)(aB + (r+w)B) with s, d, a monic, deg r < deg a, and a | N(r+w);
// this form is unique, so ideal equality is componentwise.

#include <string>
#include <utility>
#include <vector>

#include "fppoly.hpp"

namespace hayes {

struct QuadElem {
  Poly u, v, den;  // (u + v w) / den

  bool is_zero() const { return u.is_zero() && v.is_zero(); }
};

struct FracIdeal {
  Poly s, d;  // content s/d in lowest terms, both monic
  Poly a, r;  // primitive part aB + (r+w)B

  bool operator==(const FracIdeal& o) const {
    return s == o.s && d == o.d && a == o.a && r == o.r;
  }
  bool operator!=(const FracIdeal& o) const { return !(*this == o); }
};

class QuadRing {
 public:
  int p;
  Poly G1, G2;  // w^2 + G2 w = G1

  QuadRing(int p_, Poly G1_, Poly G2_) : p(p_), G1(std::move(G1_)), G2(std::move(G2_)) {
    if (!is_small_prime(p)) throw MathError("unsupported characteristic");
    if (G1.p != p || G2.p != p) throw mixed_fields();
  }

  // ---- elements ----

  QuadElem make(Poly u, Poly v, Poly den) const {
    if (den.is_zero()) throw division_by_zero();
    return QuadElem{std::move(u), std::move(v), std::move(den)};
  }

  QuadElem from_poly(Poly f) const {
    return QuadElem{std::move(f), Poly::zero(p), Poly::one(p)};
  }

  QuadElem zero() const { return from_poly(Poly::zero(p)); }
  QuadElem one() const { return from_poly(Poly::one(p)); }
  QuadElem x() const { return from_poly(Poly::x(p)); }
  QuadElem w() const { return QuadElem{Poly::zero(p), Poly::one(p), Poly::one(p)}; }

  QuadElem add(const QuadElem& a, const QuadElem& b) const {
    if (a.den == b.den) return QuadElem{a.u + b.u, a.v + b.v, a.den};
    return QuadElem{a.u * b.den + b.u * a.den, a.v * b.den + b.v * a.den, a.den * b.den};
  }

  QuadElem neg(const QuadElem& a) const { return QuadElem{-a.u, -a.v, a.den}; }
  QuadElem sub(const QuadElem& a, const QuadElem& b) const { return add(a, neg(b)); }

  QuadElem mul(const QuadElem& a, const QuadElem& b) const {
    Poly vv = a.v * b.v;
    return QuadElem{a.u * b.u + vv * G1, a.u * b.v + a.v * b.u - vv * G2,
                    a.den * b.den};
  }

  // w -> -G2 - w
  QuadElem conj(const QuadElem& a) const {
    return QuadElem{a.u - a.v * G2, -a.v, a.den};
  }

  // N(a) = a conj(a) as a reduced fraction num/den over B
  std::pair<Poly, Poly> norm(const QuadElem& a) const {
    Poly num = a.u * a.u - G2 * a.u * a.v - G1 * a.v * a.v;
    Poly den = a.den * a.den;
    Poly g = gcd(num, den);
    if (g.deg() > 0) { num = exact_div(num, g); den = exact_div(den, g); }
    return {num, den};
  }

  bool eq(const QuadElem& a, const QuadElem& b) const {
    if (a.den == b.den) return a.u == b.u && a.v == b.v;
    return a.u * b.den == b.u * a.den && a.v * b.den == b.v * a.den;
  }

  // evaluate a univariate over B at a ring element (Horner)
  QuadElem eval_poly(const Poly& f, const QuadElem& at) const {
    QuadElem acc = zero();
    for (size_t i = f.c.size(); i-- > 0;) {
      acc = mul(acc, at);
      if (f.c[i]) acc = add(acc, from_poly(Poly::constant(p, f.c[i])));
    }
    return acc;
  }

  // ---- Frobenius endomorphism x -> x^{p^k}, w -> w^{p^k} ----

  QuadElem frobenius(const QuadElem& a, int k) const {
    QuadElem r = a;
    for (int i = 0; i < k; ++i) r = frob_once(r, Poly::zero(p));
    return r;
  }

  // same, with every polynomial reduced mod m at each step; keeps degrees
  // bounded when k is large
  QuadElem frobenius_mod(const QuadElem& a, int k, const Poly& m) const {
    QuadElem r = reduce_mod(a, m);
    for (int i = 0; i < k; ++i) r = reduce_mod(frob_once(r, m), m);
    return r;
  }

  QuadElem reduce_mod(const QuadElem& a, const Poly& m) const {
    if (m.is_zero()) return a;
    return QuadElem{a.u % m, a.v % m, a.den % m};
  }

  // ---- fractional ideals ----

  FracIdeal unit_ideal() const {
    return FracIdeal{Poly::one(p), Poly::one(p), Poly::one(p), Poly::zero(p)};
  }

  // HNF of the R-module spanned by the generators
  FracIdeal ideal_from_gens(const std::vector<QuadElem>& gens) const {
    Poly D = Poly::one(p);
    for (auto& g : gens)
      if (!g.is_zero()) D = D * g.den;
    std::vector<std::pair<Poly, Poly>> rows;
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      Poly sc = exact_div(D, g.den);
      Poly xu = g.u * sc, xv = g.v * sc;
      rows.emplace_back(xu, xv);
      // w g = v G1 + (u - v G2) w
      rows.emplace_back(xv * G1, xu - xv * G2);
    }
    if (rows.empty()) throw MathError("ideal needs a nonzero generator");
    return hnf(rows, D);
  }

  FracIdeal ideal_from_poly(const Poly& f) const { return ideal_from_gens({from_poly(f)}); }

  // the two module generators (s/d) a and (s/d)(r + w)
  std::pair<QuadElem, QuadElem> ideal_gens(const FracIdeal& I) const {
    return {QuadElem{I.s * I.a, Poly::zero(p), I.d},
            QuadElem{I.s * I.r, I.s, I.d}};
  }

  FracIdeal ideal_mul(const FracIdeal& I, const FracIdeal& J) const {
    // products of the primitive bases; contents multiply separately
    QuadElem b1 = QuadElem{I.a, Poly::zero(p), Poly::one(p)};
    QuadElem b2 = QuadElem{I.r, Poly::one(p), Poly::one(p)};
    QuadElem c1 = QuadElem{J.a, Poly::zero(p), Poly::one(p)};
    QuadElem c2 = QuadElem{J.r, Poly::one(p), Poly::one(p)};
    FracIdeal P = ideal_from_gens({mul(b1, c1), mul(b1, c2), mul(b2, c1), mul(b2, c2)});
    return attach_content(P, I.s * J.s, I.d * J.d);
  }

  FracIdeal ideal_inv(const FracIdeal& I) const {
    // (aB + (r+w)B)(aB + (r+conj w)B) = a N(r+w)/... = a (aB + (r+w)B)'s norm;
    // concretely the conjugate ideal over a gives the inverse of the
    // primitive part
    FracIdeal C{Poly::one(p), Poly::one(p), I.a, (G2 - I.r) % I.a};
    check_ideal(C);
    return attach_content(C, I.d, I.s * I.a);
  }

  // norm as a reduced fraction (s^2 a) / d^2
  std::pair<Poly, Poly> ideal_norm(const FracIdeal& I) const {
    Poly num = I.s * I.s * I.a, den = I.d * I.d;
    Poly g = gcd(num, den);
    if (g.deg() > 0) { num = exact_div(num, g); den = exact_div(den, g); }
    return {num, den};
  }

  bool is_integral(const FracIdeal& I) const { return I.d.deg() == 0; }

  bool is_unit_ideal(const FracIdeal& I) const {
    return I.s.is_one() && I.d.is_one() && I.a.is_one();
  }

  // exponent of the prime P in I (P integral prime in HNF)
  int ideal_valuation(const FracIdeal& I, const FracIdeal& P) const {
    FracIdeal Pinv = ideal_inv(P);
    // separate the denominator so both loops run over integral ideals
    FracIdeal num = I;
    num.d = Poly::one(p);
    int v = count_divisions(num, Pinv);
    if (I.d.deg() > 0) {
      FracIdeal den = ideal_from_poly(I.d);
      v -= count_divisions(den, Pinv);
    }
    return v;
  }

  int elem_valuation(const QuadElem& g, const FracIdeal& P) const {
    if (g.is_zero()) throw MathError("valuation of zero");
    return ideal_valuation(ideal_from_gens({g}), P);
  }

  // ideal generated by the p^k-power Frobenius images of the generators
  FracIdeal ideal_twist(const FracIdeal& I, int k) const {
    auto [g1, g2] = ideal_gens(I);
    return ideal_from_gens({frobenius(g1, k), frobenius(g2, k)});
  }

  std::string to_string(const QuadElem& a, const std::string& xn = "x",
                        const std::string& wn = "w") const {
    if (a.is_zero()) return "0";
    std::string s;
    if (!a.u.is_zero()) s += hayes::to_string(a.u, xn);
    if (!a.v.is_zero()) {
      if (!s.empty()) s += " + ";
      if (a.v.is_one()) s += wn;
      else s += "(" + hayes::to_string(a.v, xn) + ")*" + wn;
    }
    if (!a.den.is_one()) s = "(" + s + ") / (" + hayes::to_string(a.den, xn) + ")";
    return s;
  }

  std::string to_string(const FracIdeal& I, const std::string& xn = "x",
                        const std::string& wn = "w") const {
    std::string res = "(" + hayes::to_string(I.s, xn) + "/" + hayes::to_string(I.d, xn) +
                      ")(" + hayes::to_string(I.a, xn) + ", " +
                      to_string(QuadElem{I.r, Poly::one(p), Poly::one(p)}, xn, wn) + ")";
    return res;
  }

 private:
  // rows (x_i, y_i) stand for x_i + y_i w; the module is sum of B rows,
  // scaled overall by 1/D
  FracIdeal hnf(std::vector<std::pair<Poly, Poly>>& rows, const Poly& D) const {
    Poly Rx = Poly::zero(p), C = Poly::zero(p);
    std::vector<Poly> xs;
    for (auto& [xr, yr] : rows) {
      if (yr.is_zero()) {
        if (!xr.is_zero()) xs.push_back(xr);
        continue;
      }
      if (C.is_zero()) { Rx = xr; C = yr; continue; }
      Poly al(p), be(p);
      Poly g = xgcd(C, yr, al, be);
      // unimodular row transform keeping the module fixed
      Poly leftover = exact_div(C, g) * xr - exact_div(yr, g) * Rx;
      Rx = al * Rx + be * xr;
      C = g;
      if (!leftover.is_zero()) xs.push_back(leftover);
    }
    if (C.is_zero()) throw MathError("module misses its w component");
    Poly A = Poly::zero(p);
    for (auto& f : xs) A = gcd(A, f);
    if (A.is_zero()) throw MathError("module has rank 1, not an ideal");
    Rx = Rx % A;
    // an R-ideal satisfies C | A and C | Rx; fail loudly otherwise
    Poly a = exact_div(A, monic(C));
    Poly r = exact_div(Rx, monic(C));
    FracIdeal I{monic(C), Poly::one(p), monic(a), r % a};
    // unit normalization of r against the monic scaling of C
    I.r = I.r * detail::invm(C.lead(), p);
    I.r = I.r % I.a;
    check_ideal(I);
    return attach_content(I, Poly::one(p), D);
  }

  void check_ideal(const FracIdeal& I) const {
    Poly N = I.r * I.r - G2 * I.r - G1;
    if (!(N % I.a).is_zero())
      throw MathError("module is not an ideal of the quadratic order");
  }

  FracIdeal attach_content(const FracIdeal& I, const Poly& s_extra,
                           const Poly& d_extra) const {
    Poly s = I.s * monic(s_extra), d = I.d * monic(d_extra);
    Poly g = gcd(s, d);
    if (g.deg() > 0) { s = exact_div(s, g); d = exact_div(d, g); }
    return FracIdeal{monic(s), monic(d), I.a, I.r};
  }

  int count_divisions(FracIdeal J, const FracIdeal& Pinv) const {
    int v = 0;
    for (;;) {
      FracIdeal J2 = ideal_mul(J, Pinv);
      if (!is_integral(J2)) return v;
      ++v;
      J = std::move(J2);
    }
  }

  QuadElem frob_once(const QuadElem& a, const Poly& m) const {
    // (u + v w)^p = u(x^p) + v(x^p) w^p; p is at most 7, so a plain product
    // for w^p stays cheap and its degree is bounded by deg(G1), deg(G2)
    QuadElem wp = one();
    for (int i = 0; i < p; ++i) {
      wp = mul(wp, w());
      if (!m.is_zero()) wp = reduce_mod(wp, m);
    }
    Poly su = spread(a.u, uint64_t(p)), sv = spread(a.v, uint64_t(p));
    Poly sd = spread(a.den, uint64_t(p));
    if (!m.is_zero()) { su = su % m; sv = sv % m; sd = sd % m; }
    return QuadElem{su + sv * wp.u, sv * wp.v, sd};
  }
};

}  // namespace hayes

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shtuka data nu/delta attached to a Drinfeld divisor V, derivation of the
// Hayes module coefficients from the functional equation of the exponential,
// exponential and logarithm coefficient streams (shtuka-product route and
// functional-equation recurrence route), and factorization of coefficient
// ideals from the divisor data.
//
// Conventions: f = nu / delta with delta = prod (t - alpha_i) supported on
// the t-coordinates of V, nu = y + a(t) vanishing on V' + (Xi) where V' is
// the hyperelliptic involute of V. The remaining vanishing of nu on the
// twisted divisor V^(1) is a theorem when V is a Drinfeld divisor, so it is
// verified rather than imposed.

#include <algorithm>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "oring.hpp"
#include "places.hpp"
#include "ringelem.hpp"
#include "twisted.hpp"

namespace hayes {

struct CurvePoint {
  TowerElem alpha, beta;
};

struct ShtukaData {
  const FuncRing* R;
  std::vector<CurvePoint> V, Vp;  // Vp: involutes, always computed
  RingElem nu, delta;
};

namespace detail {

// evaluate an F_p[x] polynomial at a scalar
inline TowerElem eval_base_poly(const ScalarTower& T, const Poly& f, const TowerElem& at) {
  TowerElem acc = T.zero();
  for (size_t i = f.c.size(); i-- > 0;) {
    acc = acc * at;
    if (f.c[i]) acc = acc + T.from_int(f.c[i]);
  }
  return acc;
}

// solve a square linear system over the tower in place; rows carry the
// augmented column. Throws on a singular matrix.
inline std::vector<TowerElem> solve_tower(const ScalarTower& T,
                                          std::vector<std::vector<TowerElem>> M) {
  size_t n = M.size();
  for (size_t c = 0; c < n; ++c) {
    size_t pr = c;
    while (pr < n && M[pr][c].is_zero()) ++pr;
    if (pr == n) throw MathError("interpolation system is singular");
    std::swap(M[pr], M[c]);
    TowerElem inv = T.inv(M[c][c]);
    for (size_t j = c; j <= n; ++j) M[c][j] = M[c][j] * inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || M[i][c].is_zero()) continue;
      TowerElem f = M[i][c];
      for (size_t j = c; j <= n; ++j) M[i][j] = M[i][j] - f * M[c][j];
    }
  }
  std::vector<TowerElem> sol;
  sol.reserve(n);
  for (size_t i = 0; i < n; ++i) sol.push_back(T.normalize(M[i][n]));
  return sol;
}

}  // namespace detail

// the hyperelliptic involute (alpha, -beta - F2(alpha))
inline CurvePoint involute(const FuncRing& R, const CurvePoint& P) {
  const ScalarTower& T = *R.tower;
  return CurvePoint{P.alpha,
                    -P.beta - detail::eval_base_poly(T, R.curve.F2, P.alpha)};
}

inline void require_on_curve(const FuncRing& R, const CurvePoint& P) {
  const ScalarTower& T = *R.tower;
  TowerElem lhs = P.beta * P.beta +
                  detail::eval_base_poly(T, R.curve.F2, P.alpha) * P.beta -
                  detail::eval_base_poly(T, R.curve.F1, P.alpha);
  if (!lhs.is_zero()) throw MathError("V point does not lie on the curve");
}

// Build nu and delta from the divisor V. delta = prod (t - alpha_i); the
// t-polynomial part of nu is interpolated through the involutes and Xi,
// counting coincident points with multiplicity (tangency through the
// t-derivative along the curve). Coincident t-coordinates of *distinct*
// points, triple points, and tangency at a Weierstrass point have no
// y + a(t) solution and are rejected.
inline ShtukaData shtuka_build(const FuncRing& R, std::vector<CurvePoint> V) {
  const ScalarTower& T = *R.tower;
  if (R.curve.kind == CurveKind::carlitz) {
    if (!V.empty()) throw MathError("the Carlitz module has an empty divisor");
    RingElem nu = R.t() - R.from_scalar(T.theta());
    return ShtukaData{&R, {}, {}, std::move(nu), R.one()};
  }
  if (R.curve.kind != CurveKind::hyperelliptic)
    throw MathError("shtuka construction needs the hyperelliptic or Carlitz model");
  int g = R.curve.g;
  if (int(V.size()) != g)
    throw MathError("the divisor must have exactly g points");
  std::vector<CurvePoint> Vp;
  Vp.reserve(V.size());
  for (const CurvePoint& P : V) {
    require_on_curve(R, P);
    Vp.push_back(involute(R, P));
  }

  // group interpolation nodes (the involutes and Xi) by exact point equality
  std::vector<CurvePoint> nodes = Vp;
  nodes.push_back(CurvePoint{T.theta(), R.eta_image()});
  std::vector<std::pair<CurvePoint, int>> groups;
  for (const CurvePoint& P : nodes) {
    bool merged = false;
    for (auto& [Q, m] : groups) {
      if (Q.alpha == P.alpha && Q.beta == P.beta) {
        ++m;
        merged = true;
        break;
      }
      if (Q.alpha == P.alpha)
        throw MathError("coincident t-coordinates among interpolation nodes");
    }
    if (!merged) groups.emplace_back(P, 1);
  }

  // rows of the (g+1) x (g+1) Hermite system for a(t) = c_0 + ... + c_g t^g
  std::vector<std::vector<TowerElem>> M;
  Poly dF1 = derivative(R.curve.F1), dF2 = derivative(R.curve.F2);
  for (const auto& [P, m] : groups) {
    if (m > 2)
      throw MathError("coincident t-coordinates among interpolation nodes");
    std::vector<TowerElem> row;
    row.reserve(size_t(g) + 2);
    TowerElem pw = T.one();
    for (int j = 0; j <= g; ++j) {
      row.push_back(pw);
      pw = pw * P.alpha;
    }
    row.push_back(-P.beta);
    M.push_back(std::move(row));
    if (m == 1) continue;
    // tangency: a'(alpha) = -y'(P), with y' from implicit differentiation
    TowerElem denom = T.mul_int(P.beta, 2) +
                      detail::eval_base_poly(T, R.curve.F2, P.alpha);
    if (denom.is_zero())
      throw MathError(
          "coincident interpolation nodes at a Weierstrass point");
    TowerElem yprime = (detail::eval_base_poly(T, dF1, P.alpha) -
                        detail::eval_base_poly(T, dF2, P.alpha) * P.beta) /
                       denom;
    std::vector<TowerElem> drow;
    drow.reserve(size_t(g) + 2);
    drow.push_back(T.zero());
    TowerElem pw2 = T.one();
    for (int j = 1; j <= g; ++j) {
      drow.push_back(T.mul_int(pw2, j));
      pw2 = pw2 * P.alpha;
    }
    drow.push_back(-yprime);
    M.push_back(std::move(drow));
  }
  std::vector<TowerElem> coeffs = detail::solve_tower(T, std::move(M));

  TPoly a(&T, std::move(coeffs));
  RingElem nu(&R, std::move(a), TPoly::one(&T), TPoly::one(&T));
  TPoly d = TPoly::one(&T);
  for (const CurvePoint& P : V) d = d * TPoly::linear(-P.alpha, T.one());
  RingElem delta = R.from_tpoly(std::move(d));

  // the remaining vanishing on V^(1) is what makes V a Drinfeld divisor
  for (const CurvePoint& P : V) {
    TowerElem val = R.eval(nu, T.twist(P.alpha, 1), T.twist(P.beta, 1));
    if (!val.is_zero())
      throw MathError("V is not a Drinfeld divisor for this sign normalization");
  }
  return ShtukaData{&R, std::move(V), std::move(Vp), std::move(nu), std::move(delta)};
}

// ---- coefficient streams ----

// exact fraction of two integral-side scalars; stream arithmetic never
// inverts a tower element, so denominators only ever multiply
struct ScalarFrac {
  TowerElem num, den;

  static ScalarFrac one(const ScalarTower* T) { return {T->one(), T->one()}; }
  bool is_zero() const { return num.is_zero(); }
  TowerElem value() const { return num / den; }
};

inline ScalarFrac sf_mul(const ScalarFrac& a, const ScalarFrac& b) {
  return {a.num * b.num, a.den * b.den};
}

inline ScalarFrac sf_add(const ScalarFrac& a, const ScalarFrac& b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

inline ScalarFrac sf_sub(const ScalarFrac& a, const ScalarFrac& b) {
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}

inline ScalarFrac sf_twist(const ScalarTower& T, const ScalarFrac& a, int n) {
  return {T.twist(a.num, n), T.twist(a.den, n)};
}

inline bool sf_eq(const ScalarFrac& a, const ScalarFrac& b) {
  return a.num * b.den == b.num * a.den;
}

// Cancel redundancy that stream arithmetic accumulates: gcd-reduce each side
// internally, then the rational content and the rational denominator shared
// across the pair. The value is unchanged. Reduction is quadratic in the
// theta degree, so large elements are left alone.
inline ScalarFrac sf_trim(const ScalarTower& T, ScalarFrac f) {
  if (f.num.is_zero()) return f;
  if (std::max(T.theta_degree(f.num), T.theta_degree(f.den)) > 32768) return f;
  f.num = T.normalize(f.num);
  f.den = T.normalize(f.den);
  Poly cn = Poly::zero(T.p);
  for (const auto& [k, g] : f.num.num) cn = gcd(cn, g);
  Poly cd = Poly::zero(T.p);
  for (const auto& [k, g] : f.den.num) cd = gcd(cd, g);
  Poly g = gcd(cn, cd);
  if (g.deg() > 0) {
    for (auto& [k, h] : f.num.num) h = exact_div(h, g);
    for (auto& [k, h] : f.den.num) h = exact_div(h, g);
  }
  Poly h = gcd(f.num.den, f.den.den);
  if (h.deg() > 0) {
    f.num.den = exact_div(f.num.den, h);
    f.den.den = exact_div(f.den.den, h);
  }
  return f;
}

// Lazily extended coefficient sequence with value 1 at index 0. Extension
// mutates the memo, so a stream is confined to one logical task at a time;
// everything it hands out is a value.
class CoeffStream {
 public:
  enum class Kind { exp, log };
  using Step = std::function<ScalarFrac(int, const std::vector<ScalarFrac>&)>;

  Kind kind;

  CoeffStream(Kind k, const ScalarTower* T, Step step)
      : kind(k), T_(T), step_(std::move(step)) {
    memo_.push_back(ScalarFrac::one(T));
  }

  const ScalarFrac& at(int n) {
    if (n < 0) throw MathError("stream index must be nonnegative");
    while (int(memo_.size()) <= n) {
      ScalarFrac v = sf_trim(*T_, step_(int(memo_.size()), memo_));
      if (v.den.is_zero())
        throw MathError("stream denominator vanished");
      if (kind == Kind::log && v.num.is_zero())
        throw IdentityError("a logarithm coefficient vanished");
      memo_.push_back(std::move(v));
    }
    return memo_[size_t(n)];
  }

  TowerElem value(int n) { return at(n).value(); }

 private:
  const ScalarTower* T_;
  Step step_;
  std::vector<ScalarFrac> memo_;
};

// e_n = (delta ... delta^(n-1) / nu ... nu^(n-1)) at Xi^(n). Shifting the
// evaluation point turns the product into the one-step recursion
// e_n = twist(e_{n-1}) * delta(Xi^(n)) / nu(Xi^(n)).
inline CoeffStream exp_coeffs(const ShtukaData& s) {
  const FuncRing* R = s.R;
  return CoeffStream(
      CoeffStream::Kind::exp, R->tower,
      [R, nu = s.nu, delta = s.delta](int n, const std::vector<ScalarFrac>& memo) {
        TowerElem dv = R->eval_xi(delta, n);
        TowerElem nv = R->eval_xi(nu, n);
        if (nv.is_zero())
          throw MathError("shtuka numerator vanishes at a twisted Xi");
        ScalarFrac prev = sf_twist(*R->tower, memo[size_t(n) - 1], 1);
        return ScalarFrac{prev.num * dv, prev.den * nv};
      });
}

// ---- Hayes module coefficients ----

namespace detail {

// On the projective line the coordinate ring allows denominators supported at
// the infinity place, i.e. powers of its minimal polynomial. Coefficients
// must be constants for the denominator to make sense over F_q.
inline bool den_divides_infinity(const FuncRing& R, const TPoly& den) {
  if (R.curve.kind != CurveKind::p1) return false;
  const ScalarTower& T = *R.tower;
  std::vector<uint8_t> dc(den.c.size(), 0);
  for (size_t i = 0; i < den.c.size(); ++i) {
    const TowerElem& ci = den.c[i];
    if (ci.is_zero()) continue;
    bool found = false;
    for (int v = 1; v < T.p && !found; ++v)
      if (ci == T.from_int(v)) {
        dc[i] = uint8_t(v);
        found = true;
      }
    if (!found) return false;
  }
  Poly dp(T.p, std::move(dc));
  Poly acc = Poly::one(T.p);
  for (int i = 0; i < dp.deg(); ++i) {
    acc = (acc * R.curve.c_minpoly) % dp;
    if (acc.is_zero()) return true;
  }
  return false;
}

}  // namespace detail

// Coefficients of rho_a through the functional equation e(a|_Xi z) = rho_a(e(z))
// of the exponential attached to nu/delta. Comparing orders q^k gives the
// triangular system
//   e_k (a|_Xi)^{q^k} = sum_{i<=k} rho_{a,i} e_{k-i}^{q^i}
// with unit pivots e_0 = 1, so the solve is division-free. A direct peel in
// the coordinate ring would instead divide by f^(k), whose partial quotients
// have genuine poles on the twisted divisor; the system above never leaves
// the scalars. The expansion is cut at deg_inf(a); the two orders past the
// cut and the leading coefficient sgn(a) are checked, which certifies the
// data against a nu/delta that is not a shtuka function for this ring.
inline TwistedPoly hayes_from_shtuka(const ShtukaData& s, const RingElem& a) {
  const FuncRing& R = *s.R;
  const ScalarTower& T = *R.tower;
  if (a.is_zero()) return TwistedPoly::zero(&T);
  RingElem r = R.reduce(a);
  if (r.den.deg() > 0 && !detail::den_divides_infinity(R, r.den))
    throw MathError("coefficient extraction needs an integral operand");
  for (const TPoly* part : {&r.u, &r.v})
    for (const TowerElem& c : part->c)
      if (!T.is_constant(c))
        throw MathError("coefficient extraction needs constant scalar coefficients");
  long d = *R.deg_inf(r);
  if (d < 0)
    throw MathError("coefficient extraction needs an integral operand");
  TowerElem a0 = R.eval_xi(r, 0);
  CoeffStream e = exp_coeffs(s);
  std::vector<ScalarFrac> c;
  c.reserve(size_t(d) + 1);
  for (long k = 0; k <= d + 2; ++k) {
    ScalarFrac acc = sf_mul(e.at(int(k)), ScalarFrac{T.twist(a0, int(k)), T.one()});
    for (long i = 0; i < std::min(k, d + 1); ++i)
      acc = sf_sub(acc, sf_mul(c[size_t(i)], sf_twist(T, e.at(int(k - i)), int(i))));
    if (k <= d)
      c.push_back(std::move(acc));
    else if (!acc.is_zero())
      throw MathError("shtuka data rejected: coefficient extraction is not exact");
  }
  std::vector<TowerElem> out;
  out.reserve(c.size());
  for (const ScalarFrac& ck : c) {
    TowerElem v = ck.value();
    out.push_back(T.theta_degree(v) <= 4096 ? T.normalize(v) : v);
  }
  if (out.back() != R.sgn(r))
    throw MathError("shtuka data rejected: coefficient extraction is not exact");
  return TwistedPoly(&T, std::move(out));
}

struct HayesModule {
  const FuncRing* R;
  TwistedPoly rho_t, rho_y;  // rho_y stays zero off the hyperelliptic model
};

inline HayesModule hayes_module(const ShtukaData& s) {
  const FuncRing& R = *s.R;
  if (R.curve.kind == CurveKind::p1)
    throw MathError(
        "the projective line ring is generated away from t; "
        "extract coefficients of a ring element instead");
  HayesModule m{&R, hayes_from_shtuka(s, R.t()), TwistedPoly::zero(R.tower)};
  if (R.curve.kind == CurveKind::hyperelliptic)
    m.rho_y = hayes_from_shtuka(s, R.y());
  return m;
}

// substitute a twisted polynomial into an F_p[x] polynomial
inline TwistedPoly tw_eval_poly(const ScalarTower& T, const Poly& f,
                                const TwistedPoly& at) {
  TwistedPoly acc = TwistedPoly::zero(&T);
  for (size_t i = f.c.size(); i-- > 0;) {
    acc = tw_mul(acc, at);
    if (f.c[i]) acc = acc + TwistedPoly::constant(T.from_int(f.c[i]));
  }
  return acc;
}

// the defining properties of a Hayes module: prescribed constant terms,
// monic leading terms of the right degree, commutation, and the image of
// the curve relation
inline void verify_hayes(const HayesModule& m) {
  const FuncRing& R = *m.R;
  const ScalarTower& T = *R.tower;
  if (m.rho_t.coeff(0) != T.theta() || !(m.rho_t.lead() == T.one()))
    throw IdentityError("rho_t is not sign-normalized with constant theta");
  int dt = R.curve.kind == CurveKind::carlitz ? 1 : R.curve.deg_t();
  if (m.rho_t.deg() != dt) throw IdentityError("rho_t has the wrong degree");
  if (R.curve.kind != CurveKind::hyperelliptic) return;
  if (m.rho_y.coeff(0) != R.eta_image() || !(m.rho_y.lead() == T.one()))
    throw IdentityError("rho_y is not sign-normalized with constant eta");
  if (m.rho_y.deg() != R.curve.deg_y())
    throw IdentityError("rho_y has the wrong degree");
  if (tw_mul(m.rho_t, m.rho_y) != tw_mul(m.rho_y, m.rho_t))
    throw IdentityError("rho_t and rho_y do not commute");
  TwistedPoly rel = tw_mul(m.rho_y, m.rho_y) +
                    tw_mul(tw_eval_poly(T, R.curve.F2, m.rho_t), m.rho_y) -
                    tw_eval_poly(T, R.curve.F1, m.rho_t);
  if (!rel.is_zero())
    throw IdentityError("the module does not satisfy the curve relation");
}

// Solve for rho_y from rho_t via commutation alone: the order-m coefficient
// appears in exactly one new term c_m (theta - theta^{q^m}), so the system
// triangularizes. The left-over orders of the commutator are then checked;
// a nonzero divisor gap (constant a|_Xi) would make the solution non-unique
// and is rejected.
inline TwistedPoly rho_y_from_commutation(const FuncRing& R, const TwistedPoly& rho_t) {
  const ScalarTower& T = *R.tower;
  if (R.curve.kind != CurveKind::hyperelliptic)
    throw MathError("commutation solve needs the hyperelliptic model");
  int d = R.curve.deg_y();
  TowerElem a0 = rho_t.coeff(0);
  std::vector<TowerElem> c(size_t(d) + 1, T.zero());
  c[0] = R.eta_image();
  c[size_t(d)] = T.one();
  for (int m = 1; m < d; ++m) {
    TowerElem div = a0 - T.twist(a0, m);
    if (div.is_zero())
      throw MathError("commutation does not determine the coefficient at tau^" +
                      std::to_string(m));
    TowerElem rhs = T.zero();
    for (int i = 1; i <= std::min(m, rho_t.deg()); ++i) {
      int j = m - i;
      TowerElem ti = rho_t.coeff(size_t(i));
      rhs = rhs + c[size_t(j)] * T.twist(ti, j) - ti * T.twist(c[size_t(j)], i);
    }
    c[size_t(m)] = T.normalize(rhs / div);
  }
  TwistedPoly ry(&T, std::move(c));
  if (tw_mul(rho_t, ry) != tw_mul(ry, rho_t))
    throw IdentityError("commutation system has no solution");
  return ry;
}

// l_n = (delta^(2) ... delta^(n+1) / nu^(1) ... nu^(n)) at Xi, extended by
// one extra twist of each factor per step
inline CoeffStream log_coeffs(const ShtukaData& s) {
  const FuncRing* R = s.R;
  if (R->curve.kind == CurveKind::p1)
    throw MathError("the logarithm product route needs an infinite place of degree one");
  struct State {
    RingElem nu_k, delta_k;  // nu^(n), delta^(n+1) entering step n
    int k;
  };
  auto st = std::make_shared<State>(
      State{R->twist(s.nu, 1), R->twist(s.delta, 2), 1});
  return CoeffStream(
      CoeffStream::Kind::log, R->tower,
      [R, st](int n, const std::vector<ScalarFrac>& memo) {
        if (st->k != n) throw MathError("stream state advanced out of order");
        TowerElem dv = R->eval_xi(st->delta_k, 0);
        TowerElem nv = R->eval_xi(st->nu_k, 0);
        if (nv.is_zero())
          throw MathError("shtuka numerator vanishes at a twisted Xi");
        st->nu_k = R->twist(st->nu_k, 1);
        st->delta_k = R->twist(st->delta_k, 1);
        ++st->k;
        const ScalarFrac& prev = memo[size_t(n) - 1];
        return ScalarFrac{prev.num * dv, prev.den * nv};
      });
}

// both streams from the functional equations of a single rho_a: with
// a0 = a|_Xi and rho_a = a0 + sum_j g_j tau^j,
//   e_n (a0^{q^n} - a0) = sum_j g_j e_{n-j}^{q^j}
//   l_n (a0 - a0^{q^n}) = sum_j l_{n-j} g_j^{q^{n-j}}
inline std::pair<CoeffStream, CoeffStream> coeffs_by_recurrence(
    const ScalarTower& T, const TwistedPoly& rho_a) {
  if (rho_a.deg() < 1)
    throw MathError("the recurrence needs a nonconstant operator");
  TowerElem a0 = rho_a.coeff(0);
  if (T.is_constant(a0))
    throw MathError("the recurrence needs a|_Xi outside the constant field");
  std::vector<TowerElem> gj(rho_a.c.begin(), rho_a.c.end());
  CoeffStream e(
      CoeffStream::Kind::exp, &T,
      [&T, a0, gj](int n, const std::vector<ScalarFrac>& memo) {
        ScalarFrac acc{T.zero(), T.one()};
        for (int j = 1; j < int(gj.size()) && j <= n; ++j) {
          if (gj[size_t(j)].is_zero()) continue;
          ScalarFrac term = sf_twist(T, memo[size_t(n - j)], j);
          term.num = term.num * gj[size_t(j)];
          acc = sf_add(acc, term);
        }
        acc.den = acc.den * (T.twist(a0, n) - a0);
        return acc;
      });
  CoeffStream l(
      CoeffStream::Kind::log, &T,
      [&T, a0, gj](int n, const std::vector<ScalarFrac>& memo) {
        ScalarFrac acc{T.zero(), T.one()};
        for (int j = 1; j < int(gj.size()) && j <= n; ++j) {
          if (gj[size_t(j)].is_zero()) continue;
          ScalarFrac term = memo[size_t(n - j)];
          term.num = term.num * T.twist(gj[size_t(j)], n - j);
          acc = sf_add(acc, term);
        }
        acc.den = acc.den * (a0 - T.twist(a0, n));
        return acc;
      });
  return {std::move(e), std::move(l)};
}

inline std::pair<CoeffStream, CoeffStream> coeffs_by_recurrence(const HayesModule& h) {
  return coeffs_by_recurrence(*h.R->tower, h.rho_t);
}

// ---- coefficient ideals ----

struct CoeffIdealFactorization {
  FracIdeal product;                              // assembled from the divisor data
  std::vector<std::pair<PrimeData, int>> primes;  // its prime factorization
  ScalarFrac value;                               // the coefficient itself
};

// The coefficient ideals in the tower's integer ring:
//   (e_n) = (prod_{k=0}^{n-1} I_{n-k}^{(k)} R)^{-1} J_n (J_0^{(n)})^{-1}
//   (l_n) = (prod_{k=1}^{n} I_k R)^{-1} J'_{n+1} (J'_1)^{-1}
// with I_k = (theta - theta^{q^k}, eta - eta^{q^k}), J_k the product of the
// point ideals of V evaluated at Xi^(k), and J'_k the product of the point
// ideals of the k-fold twisted involutes. The assembled product is checked
// against the principal ideal of the coefficient itself.
inline CoeffIdealFactorization coeff_ideal_factorization(const ShtukaData& s,
                                                         CoeffStream::Kind kind,
                                                         int n) {
  const FuncRing& F = *s.R;
  const ScalarTower& T = *F.tower;
  if (n < 0) throw MathError("stream index must be nonnegative");
  TowerRingView view = ring_view(F);
  for (const std::vector<CurvePoint>* pts : {&s.V, &s.Vp})
    for (const CurvePoint& P : *pts)
      if (!view.is_integral_scalar(P.alpha) || !view.is_integral_scalar(P.beta))
        throw MathError("divisor coordinate is not integral over A");

  const QuadRing& R = view.R;
  TowerElem th = T.theta(), et = F.eta_image();
  // twists are taken on the tower side, where they are plain q-power maps
  auto ideal_I = [&](int k, int j) {  // I_k^(j)
    return R.ideal_from_gens(
        {view.to_ring(T.twist(th - T.twist(th, k), j)),
         view.to_ring(T.twist(et - T.twist(et, k), j))});
  };
  auto ideal_J = [&](int k) {  // point ideals of V at Xi^(k)
    FracIdeal r = R.unit_ideal();
    for (const CurvePoint& P : s.V)
      r = R.ideal_mul(r, R.ideal_from_gens({view.to_ring(T.twist(th, k) - P.alpha),
                                            view.to_ring(T.twist(et, k) - P.beta)}));
    return r;
  };
  auto ideal_J_tw = [&](int j) {  // J_0^(j)
    FracIdeal r = R.unit_ideal();
    for (const CurvePoint& P : s.V)
      r = R.ideal_mul(r, R.ideal_from_gens({view.to_ring(T.twist(th - P.alpha, j)),
                                            view.to_ring(T.twist(et - P.beta, j))}));
    return r;
  };
  auto ideal_Jp = [&](int k) {  // point ideals of the k-fold twisted involutes
    FracIdeal r = R.unit_ideal();
    for (const CurvePoint& P : s.Vp)
      r = R.ideal_mul(r, R.ideal_from_gens({view.to_ring(th - T.twist(P.alpha, k)),
                                            view.to_ring(et - T.twist(P.beta, k))}));
    return r;
  };

  FracIdeal prod = R.unit_ideal();
  ScalarFrac value = ScalarFrac::one(&T);
  if (kind == CoeffStream::Kind::log) {
    for (int k = 1; k <= n; ++k)
      prod = R.ideal_mul(prod, R.ideal_inv(ideal_I(k, 0)));
    prod = R.ideal_mul(prod, ideal_Jp(n + 1));
    prod = R.ideal_mul(prod, R.ideal_inv(ideal_Jp(1)));
    value = log_coeffs(s).at(n);
  } else {
    for (int k = 0; k < n; ++k)
      prod = R.ideal_mul(prod, R.ideal_inv(ideal_I(n - k, k)));
    prod = R.ideal_mul(prod, ideal_J(n));
    prod = R.ideal_mul(prod, R.ideal_inv(ideal_J_tw(n)));
    value = exp_coeffs(s).at(n);
  }
  FracIdeal val_ideal =
      R.ideal_mul(view.principal(value.num), R.ideal_inv(view.principal(value.den)));
  if (!(val_ideal == prod))
    throw IdentityError("coefficient ideal does not match its divisor factorization");
  return CoeffIdealFactorization{prod, prime_factor(R, prod), std::move(value)};
}

}  // namespace hayes

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Primes of a quadratic order over F_p[x]: splitting of irreducibles of the
// base ring, residue data over both coordinate subrings, factorization of
// fractional ideals into primes, and places of a quadratic extension order
// lying above a prime. Root finding over F_{p^m} never materializes the
// exponent p^m: q-th powers are iterated p-th powers and the quadratic
// character is evaluated through the norm chain.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "factor.hpp"
#include "ffield.hpp"
#include "quadring.hpp"

namespace hayes {

// residue data of a prime P: p_theta and p_eta generate the contractions of
// P to the two coordinate subrings F_p[x] and F_p[w]; e and f are the
// matching ramification indices and residue degrees
struct PrimeData {
  FracIdeal prime;
  int deg_p = 0;
  Poly p_theta, p_eta;
  int e_theta = 0, f_theta = 0, e_eta = 0, f_eta = 0;
};

// a place of an extension order above a prime of the base order
struct PlaceData {
  PrimeData w_prime;
  int e_w = 0;
  int f_w = 0;
};

namespace detail {

// residues a + bX in F_q[X]/(X^2 + G2 X - G1) with F_q = F_p[x]/(px)
struct QX {
  Poly a, b;
};

struct QXRing {
  Poly px, G1, G2;
  int p;

  QXRing(const QuadRing& R, const Poly& px_)
      : px(px_), G1(R.G1 % px_), G2(R.G2 % px_), p(R.p) {}

  QX mul(const QX& u, const QX& v) const {
    Poly bb = (u.b * v.b) % px;
    return QX{(u.a * v.a + bb * G1) % px, (u.a * v.b + u.b * v.a - bb * G2) % px};
  }

  QX pow_small(QX u, int e) const {
    QX r{Poly::one(p), Poly::zero(p)};
    while (e) {
      if (e & 1) r = mul(r, u);
      u = mul(u, u);
      e >>= 1;
    }
    return r;
  }

  // u^(p^m) by iterated p-th powers; the exponent itself never appears
  QX qpow(QX u, int m) const {
    for (int i = 0; i < m; ++i) u = pow_small(u, p);
    return u;
  }

  // u^(1 + p + ... + p^(m-1)); composing with the (p-1)/2 power gives the
  // quadratic character u^((p^m - 1)/2)
  QX norm_chain(QX u, int m) const {
    QX acc = u, cur = u;
    for (int i = 1; i < m; ++i) {
      cur = pow_small(cur, p);
      acc = mul(acc, cur);
    }
    return acc;
  }

  // sum of u^(2^i), i < m: the F_2-trace, componentwise on the split algebra
  QX trace_chain(QX u, int m) const {
    QX acc = u, cur = u;
    for (int i = 1; i < m; ++i) {
      cur = mul(cur, cur);
      acc = QX{acc.a + cur.a, acc.b + cur.b};
    }
    return acc;
  }
};

inline Poly inv_mod_poly(const Poly& a, const Poly& px) {
  Poly s(a.p), t(a.p);
  Poly g = xgcd(a % px, px, s, t);
  if (!g.is_one()) throw MathError("element is not invertible modulo " + to_string(px));
  return s % px;
}

enum class SplitKind { inert, split, ramified };

struct RootInfo {
  SplitKind kind;
  std::vector<Poly> roots;  // residues mod px where the quadratic vanishes
};

// roots in F_{p^m} of X^2 + G2 X - G1 through gcd(X^q - X, f): a zero
// remainder means two distinct roots, a linear factor a double root, a
// trivial gcd no root at all
inline RootInfo quad_roots(const QuadRing& R, const Poly& px) {
  const int p = R.p, m = px.deg();
  QXRing Q(R, px);
  const QX X{Poly::zero(p), Poly::one(p)};

  auto value_at = [&](const Poly& r) {
    return (r * r + Q.G2 * r - Q.G1) % px;
  };
  // root of the linear la + lb X, provided it divides the quadratic
  auto linear_root = [&](const Poly& la, const Poly& lb) -> std::optional<Poly> {
    if (lb.is_zero()) return std::nullopt;
    Poly cand = (-(la * inv_mod_poly(lb, px))) % px;
    if (value_at(cand).is_zero()) return cand;
    return std::nullopt;
  };

  QX t = Q.qpow(X, m);
  Poly ta = t.a % px, tb = (t.b - Poly::one(p)) % px;
  if (ta.is_zero() && tb.is_zero()) {
    // split: dig out one root by equal-degree splitting, conjugate the other
    uint64_t seed = 0xd1b54a32d192ed03ull ^ uint64_t(m);
    for (size_t i = 0; i < px.c.size(); ++i) seed = seed * 1099511628211ull + px.c[i];
    std::mt19937_64 rng(seed);
    for (;;) {
      QX u{random_poly(p, int(rng() % uint64_t(m)), rng) % px,
           random_poly(p, int(rng() % uint64_t(m)), rng) % px};
      if (auto root = linear_root(u.a, u.b)) {
        Poly other = (-(Q.G2 + *root)) % px;
        return RootInfo{SplitKind::split, {*root, other}};
      }
      QX s = (p == 2) ? Q.trace_chain(u, m)
                      : Q.pow_small(Q.norm_chain(u, m), (p - 1) / 2);
      Poly sa = (p == 2) ? s.a : (s.a - Poly::one(p)) % px;
      if (auto root = linear_root(sa, s.b)) {
        Poly other = (-(Q.G2 + *root)) % px;
        return RootInfo{SplitKind::split, {*root, other}};
      }
    }
  }
  if (auto root = linear_root(ta, tb))
    return RootInfo{SplitKind::ramified, {*root}};
  return RootInfo{SplitKind::inert, {}};
}

inline bool prime_data_less(const PrimeData& a, const PrimeData& b) {
  if (a.deg_p != b.deg_p) return a.deg_p < b.deg_p;
  if (a.p_theta != b.p_theta) return poly_less(a.p_theta, b.p_theta);
  return poly_less(a.prime.r, b.prime.r);
}

}  // namespace detail

// the primes of R above the monic irreducible px, each in HNF; a repeated
// root triggers the local maximality test (the order is Dedekind above px
// exactly when px divides the discriminant to the first power)
inline std::vector<FracIdeal> split_prime(const QuadRing& R, const Poly& p_x) {
  Poly px = monic(p_x);
  if (px.deg() < 1 || !FiniteField::is_irreducible(px))
    throw MathError("not irreducible over the base ring: " + to_string(px));
  auto info = detail::quad_roots(R, px);
  const Poly one = Poly::one(R.p);
  if (info.kind == detail::SplitKind::inert) return {R.ideal_from_poly(px)};
  if (info.kind == detail::SplitKind::split) {
    std::vector<FracIdeal> out;
    for (const auto& r : info.roots)
      out.push_back(R.ideal_from_gens({R.from_poly(px), R.make(-r, one, one)}));
    if (detail::poly_less(out[1].r, out[0].r)) std::swap(out[0], out[1]);
    return out;
  }
  const Poly& r0 = info.roots[0];
  Poly N0 = r0 * r0 + R.G2 * r0 - R.G1;
  if (N0.is_zero()) throw MathError("quadratic ring is not a domain");
  int v = 0;
  Poly rest = N0;
  while ((rest % px).is_zero()) {
    rest = exact_div(rest, px);
    ++v;
  }
  if (v != 1)
    throw MathError("order is not maximal above " + to_string(px) +
                    ": the conductor is divisible by it");
  return {R.ideal_from_gens({R.from_poly(px), R.make(-r0, one, one)})};
}

namespace detail {

// minimal polynomial over F_p of the class of g in R/(px) (2m-dimensional),
// or in R/(px, w - w_val) (m-dimensional) when w_val is given
inline Poly minpoly_in_quotient(const QuadRing& R, const Poly& px,
                                const Poly* w_val, QuadElem g) {
  const int p = R.p, m = px.deg();
  const int dim = w_val ? m : 2 * m;
  if (!g.den.is_one()) {
    Poly di = inv_mod_poly(g.den, px);
    g = QuadElem{g.u * di, g.v * di, Poly::one(p)};
  }
  auto reduce = [&](QuadElem e) {
    if (w_val) {
      e.u = e.u + e.v * (*w_val);
      e.v = Poly::zero(p);
    }
    e.u = e.u % px;
    e.v = e.v % px;
    return e;
  };
  auto vec = [&](const QuadElem& e) {
    std::vector<int> v(dim, 0);
    for (int i = 0; i < m; ++i) v[i] = e.u.coeff(i);
    if (!w_val)
      for (int i = 0; i < m; ++i) v[m + i] = e.v.coeff(i);
    return v;
  };
  g = reduce(g);

  struct Row {
    std::vector<int> v, combo;
    int pivot;
  };
  std::vector<Row> basis;
  QuadElem cur = R.one();
  for (int k = 0;; ++k) {
    std::vector<int> v = vec(reduce(cur));
    std::vector<int> combo(size_t(k) + 1, 0);
    combo[k] = 1;
    for (const auto& row : basis) {
      int f = v[row.pivot];
      if (!f) continue;
      for (int i = 0; i < dim; ++i) v[i] = (v[i] + (p - f) * row.v[i]) % p;
      for (size_t i = 0; i < row.combo.size(); ++i)
        combo[i] = (combo[i] + (p - f) * row.combo[i]) % p;
    }
    int piv = -1;
    for (int i = 0; i < dim; ++i)
      if (v[i]) {
        piv = i;
        break;
      }
    if (piv < 0) {
      Poly mp(p);
      mp.c.assign(combo.size(), 0);
      for (size_t i = 0; i < combo.size(); ++i) mp.c[i] = uint8_t(combo[i]);
      mp.trim();
      return mp;
    }
    int s = detail::invm(uint8_t(v[piv]), p);
    for (int i = 0; i < dim; ++i) v[i] = (v[i] * s) % p;
    for (auto& ci : combo) ci = (ci * s) % p;
    basis.push_back(Row{std::move(v), std::move(combo), piv});
    cur = R.mul(cur, g);
  }
}

}  // namespace detail

// residue and ramification data of a prime; rejects non-primes
inline PrimeData splitting_data(const QuadRing& R, const FracIdeal& P) {
  if (!R.is_integral(P)) throw MathError("not a prime ideal: it is fractional");
  Poly px;
  if (P.a.is_one()) {
    px = P.s;
  } else {
    if (!P.s.is_one())
      throw MathError("not a prime ideal: scalar content and primitive part are both proper");
    px = P.a;
  }
  if (px.deg() < 1 || !FiniteField::is_irreducible(px))
    throw MathError("not a prime ideal: base contraction " + to_string(px) +
                    " is not irreducible");
  auto above = split_prime(R, px);
  bool found = false;
  for (const auto& Q : above) found = found || Q == P;
  if (!found) throw MathError("not a prime ideal of the order");

  PrimeData D;
  D.prime = P;
  D.deg_p = R.ideal_norm(P).first.deg();
  D.p_theta = px;
  D.e_theta = R.ideal_valuation(R.ideal_from_poly(px), P);
  D.f_theta = D.deg_p / px.deg();
  if (P.a.is_one()) {
    D.p_eta = detail::minpoly_in_quotient(R, px, nullptr, R.w());
  } else {
    Poly wv = (-P.r) % px;
    D.p_eta = detail::minpoly_in_quotient(R, px, &wv, R.w());
  }
  D.e_eta = R.elem_valuation(R.eval_poly(D.p_eta, R.w()), P);
  D.f_eta = D.deg_p / D.p_eta.deg();
  if (D.deg_p != D.p_theta.deg() * D.f_theta || D.deg_p != D.p_eta.deg() * D.f_eta)
    throw MathError("residue degree bookkeeping failed for " + to_string(px));
  return D;
}

// factorization of a fractional ideal into primes with signed exponents,
// sorted by residue degree, then base contraction, then HNF residue
inline std::vector<std::pair<PrimeData, int>> prime_factor(const QuadRing& R,
                                                           const FracIdeal& I) {
  std::vector<std::pair<PrimeData, int>> out;
  Poly carrier = I.s * I.a * I.d;
  if (carrier.deg() == 0) return out;
  for (const auto& [q, e] : factor_poly(carrier)) {
    (void)e;
    for (const auto& P : split_prime(R, q)) {
      int v = R.ideal_valuation(I, P);
      if (v != 0) out.emplace_back(splitting_data(R, P), v);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return detail::prime_data_less(a.first, b.first);
  });
  return out;
}

inline FracIdeal ideal_pow(const QuadRing& R, FracIdeal I, int e) {
  if (e < 0) {
    I = R.ideal_inv(I);
    e = -e;
  }
  FracIdeal r = R.unit_ideal();
  while (e--) r = R.ideal_mul(r, I);
  return r;
}

// places of the extension order H above the prime p of A, where H is a
// quadratic order over F_p[x'] receiving A through the given coordinate
// images; e_w is the exponent of the place in p·H, f_w its relative residue
// degree. Non-maximality of H above the relevant base irreducibles surfaces
// as the conductor error from split_prime.
inline std::vector<PlaceData> places_above(const QuadRing& A, const PrimeData& p,
                                           const QuadRing& H,
                                           const QuadElem& theta_img,
                                           const QuadElem& eta_img) {
  (void)A;
  QuadElem g1 = H.eval_poly(p.prime.s * p.prime.a, theta_img);
  QuadElem g2 = H.mul(H.eval_poly(p.prime.s, theta_img),
                      H.add(H.eval_poly(p.prime.r, theta_img), eta_img));
  FracIdeal IH = H.ideal_from_gens({g1, g2});
  std::vector<PlaceData> out;
  for (const auto& [W, e] : prime_factor(H, IH))
    out.push_back(PlaceData{W, e, W.deg_p / p.deg_p});
  return out;
}

// the trivial tower: the prime is its own place
inline std::vector<PlaceData> places_above(const QuadRing& A, const PrimeData& p) {
  (void)A;
  return {PlaceData{p, 1, 1}};
}

// ---- canonical printing ----

// descending monomials joined by '+', coefficient digits attached without a
// separator: "x^8+x^6+x^5+x^4+x^3+x+1", "2x^2+1"
inline std::string compact_poly(const Poly& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::string s;
  for (int i = f.deg(); i >= 0; --i) {
    uint8_t v = f.coeff(size_t(i));
    if (!v) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(int(v));
      continue;
    }
    if (v != 1) s += std::to_string(int(v));
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

// "(x)" for primes with trivial primitive part, "(px, w+r)" otherwise
inline std::string prime_string(const PrimeData& P, const std::string& tvar,
                                const std::string& wvar) {
  if (P.prime.a.is_one()) return "(" + compact_poly(P.prime.s, tvar) + ")";
  std::string second = wvar;
  if (!P.prime.r.is_zero()) second += "+" + compact_poly(P.prime.r, tvar);
  return "(" + compact_poly(P.prime.a, tvar) + ", " + second + ")";
}

// factors sorted by norm degree then by printed form; "(1)" for the unit
inline std::string factorization_string(std::vector<std::pair<PrimeData, int>> F,
                                        const std::string& tvar,
                                        const std::string& wvar) {
  if (F.empty()) return "(1)";
  std::vector<std::tuple<int, std::string, int>> parts;
  parts.reserve(F.size());
  for (const auto& [P, e] : F)
    parts.emplace_back(P.deg_p, prime_string(P, tvar, wvar), e);
  std::sort(parts.begin(), parts.end());
  std::string res;
  for (const auto& [d, s, e] : parts) {
    (void)d;
    if (!res.empty()) res += " ";
    res += s;
    if (e != 1) res += "^" + std::to_string(e);
  }
  return res;
}

}  // namespace hayes

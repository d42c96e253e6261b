// SPDX-License-Identifier: Apache-2.0
#pragma once

// Scalar field arithmetic for the coefficient side of a Hayes module: a
// tower F_p < F_p(theta) < F_p(theta, g_1, g_2, ...) where each algebraic
// generator g_i satisfies a monic minimal polynomial with coefficients in
// the subtower below it. Elements are kept as a sparse sum of monomials in
// the algebraic generators, each with a dense numerator in F_p[theta], over
// one shared denominator in F_p[theta]. No gcd reduction is performed on
// the hot paths; the coefficient streams reach theta-degrees near 10^6 and
// equality is decided by cross multiplication instead.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ffield.hpp"
#include "fppoly.hpp"

namespace hayes {

class ScalarTower;

struct TowerElem {
  const ScalarTower* T = nullptr;
  std::map<uint64_t, Poly> num;  // key packs one byte per algebraic generator
  Poly den;

  bool is_zero() const { return num.empty(); }
};

namespace detail {

inline int key_exp(uint64_t key, int i) { return int((key >> (8 * i)) & 0xff); }
inline uint64_t key_set(uint64_t key, int i, int e) {
  return (key & ~(uint64_t(0xff) << (8 * i))) | (uint64_t(e) << (8 * i));
}

}  // namespace detail

class ScalarTower {
 public:
  int p;
  uint64_t q;  // the twisting power, a power of p

  struct Gen {
    std::string name;
    int deg;             // degree of the minimal polynomial
    TowerElem rest;      // g^deg rewritten in normal form
    bool constant;       // true when the generator lies in the constant field
  };

  ScalarTower(int p_, uint64_t q_) : p(p_), q(q_) {
    if (!is_small_prime(p)) throw MathError("unsupported characteristic");
    uint64_t t = q;
    while (t > 1) {
      if (t % p) throw MathError("twisting power must be a power of the characteristic");
      t /= uint64_t(p);
    }
    if (q < 2) throw MathError("twisting power must be at least 2");
  }

  // minpoly: monic of degree d in the new generator, coefficients in the
  // current tower, passed low-degree-first with the leading 1 omitted
  int add_generator(const std::string& name, const std::vector<TowerElem>& minpoly_low) {
    int d = int(minpoly_low.size());
    if (d < 1) throw MathError("generator needs a nonconstant minimal polynomial");
    if (gens_.size() >= 8) throw MathError("tower supports at most 8 algebraic generators");
    int idx = int(gens_.size());
    Gen g;
    g.name = name;
    g.deg = d;
    bool constant = true;
    TowerElem rest = zero();
    for (int j = 0; j < d; ++j) {
      const TowerElem& cj = minpoly_low[j];
      if (cj.is_zero()) continue;
      if (!is_constant(cj)) constant = false;
      // append -c_j * g^j; exponents j < d stay in normal range, and the new
      // generator cannot occur inside c_j, so keys can be shifted directly
      TowerElem term{this, {}, cj.den};
      for (auto& [k, f] : cj.num) {
        if (detail::key_exp(k, idx) != 0)
          throw MathError("relation coefficient mentions the generator being added");
        term.num[detail::key_set(k, idx, j)] = -f;
      }
      rest = add(rest, term);
    }
    rest = normalize(rest);
    if (!rest.is_zero() && !rest.den.is_one())
      throw MathError("generator relations must be integral over F_p[theta]");
    g.rest = rest;
    g.constant = constant;
    gens_.push_back(std::move(g));
    twist_images_.emplace_back();
    return idx;
  }

  int generator_count() const { return int(gens_.size()); }
  const Gen& generator(int i) const { return gens_[i]; }
  int generator_index(const std::string& name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].name == name) return int(i);
    throw MathError("unknown generator: " + name);
  }

  // ---- element constructors ----

  TowerElem zero() const { return TowerElem{this, {}, Poly::one(p)}; }

  TowerElem one() const { return from_poly(Poly::one(p)); }

  TowerElem from_int(int v) const { return from_poly(Poly::constant(p, v)); }

  TowerElem from_poly(const Poly& f) const {
    TowerElem e{this, {}, Poly::one(p)};
    if (!f.is_zero()) e.num[0] = f;
    return e;
  }

  TowerElem theta() const { return from_poly(Poly::x(p)); }

  TowerElem gen(int i, int exp = 1) const {
    if (i < 0 || i >= int(gens_.size())) throw MathError("generator index out of range");
    TowerElem e{this, {}, Poly::one(p)};
    e.num[detail::key_set(0, i, 1)] = Poly::one(p);
    if (exp == 0) return one();
    TowerElem r = e;
    for (int k = 1; k < exp; ++k) r = mul(r, e);
    return r;
  }

  // ---- ring operations ----

  TowerElem add(const TowerElem& a, const TowerElem& b) const {
    check(a); check(b);
    TowerElem r{this, {}, Poly::one(p)};
    if (a.den == b.den) {
      r.den = a.den;
      r.num = a.num;
      for (auto& [k, f] : b.num) accum(r.num, k, f);
    } else {
      r.den = a.den * b.den;
      for (auto& [k, f] : a.num) accum(r.num, k, f * b.den);
      for (auto& [k, f] : b.num) accum(r.num, k, f * a.den);
    }
    return r;
  }

  TowerElem neg(const TowerElem& a) const {
    TowerElem r = a;
    for (auto& [k, f] : r.num) f = -f;
    return r;
  }

  TowerElem sub(const TowerElem& a, const TowerElem& b) const { return add(a, neg(b)); }

  TowerElem mul(const TowerElem& a, const TowerElem& b) const {
    check(a); check(b);
    TowerElem r{this, {}, a.den * b.den};
    for (auto& [ka, fa] : a.num)
      for (auto& [kb, fb] : b.num) {
        Poly prod = fa * fb;
        if (needs_reduction(ka, kb)) {
          // relations are integral, so the rewrite has denominator 1
          TowerElem t = reduce_monomial(combine(ka, kb), prod);
          for (auto& [k, f] : t.num) accum(r.num, k, f);
        } else {
          accum(r.num, combine(ka, kb), prod);
        }
      }
    return r;
  }

  TowerElem mul_int(const TowerElem& a, int v) const {
    TowerElem r = a;
    int s = v % p; if (s < 0) s += p;
    if (s == 0) return zero();
    for (auto& [k, f] : r.num) f = f * s;
    return r;
  }

  TowerElem inv(const TowerElem& a) const {
    check(a);
    if (a.is_zero()) throw division_by_zero();
    int top = top_gen(a);
    if (top < 0) {
      // rational in theta only
      TowerElem r{this, {}, a.num.at(0)};
      r.num[0] = a.den;
      return r;
    }
    int d = gens_[top].deg;
    if (d == 2) {
      // a = u + v g with g^2 = A + B g; then (u + vB - vg)(u + vg) = u(u+vB) - v^2 A
      TowerElem u = part(a, top, 0), v = part(a, top, 1);
      TowerElem A = part(gens_[top].rest, top, 0), B = part(gens_[top].rest, top, 1);
      TowerElem w = add(u, mul(v, B));
      TowerElem N = sub(mul(u, w), mul(mul(v, v), A));
      if (N.is_zero())
        throw ReducibleStep(gens_[top].name, to_string(sub(w, mul(v, gen(top, 1)))));
      TowerElem conj = sub(w, mul(v, gen(top, 1)));
      return mul(conj, inv(N));
    }
    if (gens_[top].constant && is_constant(a)) return inv_constant(a);
    // radical step: g^d = R with R free of g. If every monomial of a carries
    // the same g-exponent e, then a = g^e b and 1/a = g^{d-e} / (b R).
    if (!has_gen(gens_[top].rest, top)) {
      int e = -1;
      bool uniform = true;
      for (auto& [k, f] : a.num) {
        int ke = detail::key_exp(k, top);
        if (e < 0) e = ke;
        else if (ke != e) { uniform = false; break; }
      }
      if (uniform && e > 0) {
        if (gens_[top].rest.is_zero())
          throw ReducibleStep(gens_[top].name, gens_[top].name);
        TowerElem b{this, {}, a.den};
        for (auto& [k, f] : a.num) b.num[detail::key_set(k, top, 0)] = f;
        return mul(gen(top, d - e), inv(mul(b, gens_[top].rest)));
      }
    }
    return inv_linalg(a, top, d);
  }

  TowerElem div(const TowerElem& a, const TowerElem& b) const { return mul(a, inv(b)); }

  bool eq(const TowerElem& a, const TowerElem& b) const {
    check(a); check(b);
    if (a.den == b.den) {
      return a.num == b.num;
    }
    if (a.num.size() != b.num.size()) return false;
    auto ia = a.num.begin(), ib = b.num.begin();
    for (; ia != a.num.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return false;
      if (ia->second * b.den != ib->second * a.den) return false;
    }
    return true;
  }

  // ---- Frobenius twisting ----

  // n-fold q-power Frobenius; fixes F_p coefficients of the numerator
  // polynomials only through the spread x -> x^{q^n}
  TowerElem twist(const TowerElem& a, int n) const {
    check(a);
    if (n == 0 || a.is_zero()) return a;
    uint64_t stride = 1;
    for (int i = 0; i < n; ++i) stride *= q;
    TowerElem r{this, {}, spread(a.den, stride)};
    for (auto& [k, f] : a.num) {
      TowerElem term = from_poly(spread(f, stride));
      for (int i = 0; i < int(gens_.size()); ++i) {
        int e = detail::key_exp(k, i);
        for (int j = 0; j < e; ++j) term = mul(term, twist_image(i, n));
      }
      // term has denominator 1: generator images are integral
      for (auto& [k2, f2] : term.num) accum(r.num, k2, f2);
    }
    return r;
  }

  // g_i^{q^n} in normal form, cached as a chain
  const TowerElem& twist_image(int i, int n) const {
    auto& chain = twist_images_[i];
    while (int(chain.size()) < n) {
      if (chain.empty()) {
        TowerElem g1 = gen(i, 1), r = one();
        for (uint64_t e = q; e; e >>= 1) {
          if (e & 1) r = mul(r, g1);
          g1 = mul(g1, g1);
        }
        chain.push_back(std::move(r));
      } else {
        chain.push_back(twist(chain.back(), 1));
      }
    }
    return chain[n - 1];
  }

  // ---- structure queries and maps ----

  bool is_constant(const TowerElem& a) const {
    if (a.den.deg() > 0) return false;
    for (auto& [k, f] : a.num) {
      if (f.deg() > 0) return false;
      for (int i = 0; i < int(gens_.size()); ++i)
        if (detail::key_exp(k, i) > 0 && !gens_[i].constant) return false;
    }
    return true;
  }

  // evaluate under theta -> theta_img and g_i -> gen_imgs[i] in a finite field
  FFElem eval(const TowerElem& a, const FFElem& theta_img,
              const std::vector<FFElem>& gen_imgs) const {
    check(a);
    const FiniteField* F = theta_img.F;
    FFElem n = F->zero();
    for (auto& [k, f] : a.num) {
      FFElem t = eval_poly(f, theta_img);
      for (int i = 0; i < int(gens_.size()); ++i)
        for (int e = 0; e < detail::key_exp(k, i); ++e) t = F->mul(t, gen_imgs[i]);
      n = F->add(n, t);
    }
    FFElem d = eval_poly(a.den, theta_img);
    if (d.is_zero()) throw MathError("evaluation hits a denominator zero");
    return F->div(n, d);
  }

  static FFElem eval_poly(const Poly& f, const FFElem& x) {
    const FiniteField* F = x.F;
    FFElem acc = F->zero();
    for (size_t i = f.c.size(); i-- > 0;) {
      acc = F->mul(acc, x);
      if (f.c[i]) acc = F->add(acc, F->from_int(f.c[i]));
    }
    return acc;
  }

  // divide numerators and denominator by their common polynomial gcd; only
  // worthwhile on small elements
  TowerElem normalize(const TowerElem& a) const {
    if (a.is_zero()) return zero();
    Poly g = a.den;
    for (auto& [k, f] : a.num) g = gcd(g, f);
    TowerElem r{this, {}, exact_div(a.den, g)};
    for (auto& [k, f] : a.num) r.num[k] = exact_div(f, g);
    uint8_t lead = r.den.lead();
    if (lead != 1) {
      uint8_t linv = detail::invm(lead, p);
      r.den = r.den * linv;
      for (auto& [k, f] : r.num) f = f * linv;
    }
    return r;
  }

  int theta_degree(const TowerElem& a) const {
    int d = a.den.deg();
    for (auto& [k, f] : a.num) d = std::max(d, f.deg());
    return d;
  }

  std::string to_string(const TowerElem& a) const {
    if (a.is_zero()) return "0";
    std::string s;
    for (auto& [k, f] : a.num) {
      if (!s.empty()) s += " + ";
      std::string mono;
      for (int i = 0; i < int(gens_.size()); ++i) {
        int e = detail::key_exp(k, i);
        if (!e) continue;
        if (!mono.empty()) mono += "*";
        mono += gens_[i].name;
        if (e > 1) mono += "^" + std::to_string(e);
      }
      std::string coef = hayes::to_string(f, "theta");
      if (mono.empty()) s += coef;
      else if (f.is_one()) s += mono;
      else s += "(" + coef + ")*" + mono;
    }
    if (!a.den.is_one()) s = "(" + s + ") / (" + hayes::to_string(a.den, "theta") + ")";
    return s;
  }

 private:
  void check(const TowerElem& a) const {
    if (a.T != this) throw mixed_fields();
  }

  static void accum(std::map<uint64_t, Poly>& m, uint64_t k, const Poly& f) {
    if (f.is_zero()) return;
    auto it = m.find(k);
    if (it == m.end()) {
      m.emplace(k, f);
    } else {
      it->second = it->second + f;
      if (it->second.is_zero()) m.erase(it);
    }
  }

  static uint64_t combine(uint64_t ka, uint64_t kb) { return ka + kb; }

  bool needs_reduction(uint64_t ka, uint64_t kb) const {
    for (int i = 0; i < int(gens_.size()); ++i)
      if (detail::key_exp(ka, i) + detail::key_exp(kb, i) >= gens_[i].deg) return true;
    return false;
  }

  // rewrite num * (monomial with possibly out-of-range exponents) in normal form
  TowerElem reduce_monomial(uint64_t key, const Poly& numf) const {
    int i = -1;
    for (int j = int(gens_.size()) - 1; j >= 0; --j)
      if (detail::key_exp(key, j) >= gens_[j].deg) { i = j; break; }
    if (i < 0) {
      TowerElem r{this, {}, Poly::one(p)};
      if (!numf.is_zero()) r.num[key] = numf;
      return r;
    }
    int e = detail::key_exp(key, i);
    TowerElem low{this, {}, Poly::one(p)};
    low.num[detail::key_set(key, i, e - gens_[i].deg)] = numf;
    return mul(low, gens_[i].rest);
  }

  // coefficient of g_top^e in a, as an element over the lower generators
  TowerElem part(const TowerElem& a, int top, int e) const {
    TowerElem r{this, {}, a.den};
    for (auto& [k, f] : a.num)
      if (detail::key_exp(k, top) == e) r.num[detail::key_set(k, top, 0)] = f;
    return r;
  }

  static bool has_gen(const TowerElem& a, int i) {
    for (auto& [k, f] : a.num)
      if (detail::key_exp(k, i) > 0) return true;
    return false;
  }

  int top_gen(const TowerElem& a) const {
    int top = -1;
    for (auto& [k, f] : a.num)
      for (int i = 0; i < int(gens_.size()); ++i)
        if (detail::key_exp(k, i) > 0) top = std::max(top, i);
    return top;
  }

  // inverse inside the constant subfield via a multiplication matrix over F_p
  TowerElem inv_constant(const TowerElem& a) const {
    // enumerate constant monomial basis
    std::vector<uint64_t> basis;
    uint64_t total = 1;
    for (int i = 0; i < int(gens_.size()); ++i)
      if (gens_[i].constant) total *= uint64_t(gens_[i].deg);
    basis.reserve(total);
    for (uint64_t r = 0; r < total; ++r) {
      uint64_t rr = r, key = 0;
      for (int i = 0; i < int(gens_.size()); ++i) {
        if (!gens_[i].constant) continue;
        key = detail::key_set(key, i, int(rr % uint64_t(gens_[i].deg)));
        rr /= uint64_t(gens_[i].deg);
      }
      basis.push_back(key);
    }
    auto index_of = [&](uint64_t key) {
      for (size_t j = 0; j < basis.size(); ++j)
        if (basis[j] == key) return int(j);
      throw MathError("constant basis lookup failed");
    };
    int D = int(basis.size());
    // columns: a * basis_j expressed over the basis
    std::vector<std::vector<int>> M(D, std::vector<int>(D + 1, 0));
    for (int j = 0; j < D; ++j) {
      TowerElem bj{this, {}, Poly::one(p)};
      bj.num[basis[j]] = Poly::one(p);
      TowerElem prod = mul(a, bj);
      // prod.den is constant; fold it in
      uint8_t dc = prod.den.coeff(0);
      uint8_t dinv = detail::invm(dc, p);
      for (auto& [k, f] : prod.num) {
        int row = index_of(k);
        M[row][j] = detail::mulm(f.coeff(0), dinv, p);
      }
    }
    M[0][D] = 1;  // solve a * x = 1
    std::vector<int> sol(D, 0);
    if (!gauss_fp(M, D, sol))
      throw ReducibleStep("constant subfield", to_string(a));
    TowerElem r{this, {}, Poly::one(p)};
    for (int j = 0; j < D; ++j)
      if (sol[j]) r.num[basis[j]] = Poly::constant(p, sol[j]);
    return r;
  }

  // generic inverse by solving a x = 1 over the subtower below g_top: columns
  // are a g^j expressed in the basis 1, g, ..., g^{d-1} with entries in the
  // lower field, eliminated with recursive inversion (top index decreases)
  TowerElem inv_linalg(const TowerElem& a, int top, int d) const {
    std::vector<std::vector<TowerElem>> M(d);
    for (int j = 0; j < d; ++j) {
      TowerElem col = mul(a, gen(top, j));
      for (int i = 0; i < d; ++i) M[size_t(i)].push_back(part(col, top, i));
    }
    for (int i = 0; i < d; ++i)
      M[size_t(i)].push_back(i == 0 ? one() : zero());
    int r = 0;
    std::vector<int> pivot_col(size_t(d), -1);
    for (int c = 0; c < d && r < d; ++c) {
      int pr = -1;
      for (int i = r; i < d; ++i)
        if (!M[size_t(i)][size_t(c)].is_zero()) { pr = i; break; }
      if (pr < 0) continue;
      std::swap(M[size_t(pr)], M[size_t(r)]);
      TowerElem s = inv(M[size_t(r)][size_t(c)]);
      for (int j = c; j <= d; ++j) M[size_t(r)][size_t(j)] = mul(M[size_t(r)][size_t(j)], s);
      for (int i = 0; i < d; ++i) {
        if (i == r) continue;
        TowerElem f = M[size_t(i)][size_t(c)];
        if (f.is_zero()) continue;
        for (int j = c; j <= d; ++j)
          M[size_t(i)][size_t(j)] =
              sub(M[size_t(i)][size_t(j)], mul(f, M[size_t(r)][size_t(j)]));
      }
      pivot_col[size_t(r++)] = c;
    }
    for (int i = r; i < d; ++i)
      if (!M[size_t(i)][size_t(d)].is_zero())
        throw ReducibleStep(gens_[size_t(top)].name, to_string(a));
    TowerElem res = zero();
    for (int i = 0; i < r; ++i)
      res = add(res, mul(M[size_t(i)][size_t(d)], gen(top, pivot_col[size_t(i)])));
    return res;
  }

  bool gauss_fp(std::vector<std::vector<int>>& M, int D, std::vector<int>& sol) const {
    std::vector<int> pivot_col(D, -1);
    int r = 0;
    for (int c = 0; c < D && r < D; ++c) {
      int pr = -1;
      for (int i = r; i < D; ++i)
        if (M[i][c] % p != 0) { pr = i; break; }
      if (pr < 0) continue;
      std::swap(M[pr], M[r]);
      int inv = detail::invm(uint8_t(M[r][c] % p), p);
      for (int j = c; j <= D; ++j) M[r][j] = (M[r][j] * inv) % p;
      for (int i = 0; i < D; ++i) {
        if (i == r) continue;
        int f = M[i][c] % p;
        if (!f) continue;
        for (int j = c; j <= D; ++j)
          M[i][j] = ((M[i][j] - f * M[r][j]) % p + p * p) % p;
      }
      pivot_col[r++] = c;
    }
    for (int i = r; i < D; ++i)
      if (M[i][D] % p != 0) return false;
    sol.assign(D, 0);
    for (int i = 0; i < r; ++i) sol[pivot_col[i]] = M[i][D] % p;
    return true;
  }

  std::vector<Gen> gens_;
  mutable std::vector<std::vector<TowerElem>> twist_images_;
};

// convenience operators; both operands must share a tower
inline TowerElem operator+(const TowerElem& a, const TowerElem& b) { return a.T->add(a, b); }
inline TowerElem operator-(const TowerElem& a, const TowerElem& b) { return a.T->sub(a, b); }
inline TowerElem operator-(const TowerElem& a) { return a.T->neg(a); }
inline TowerElem operator*(const TowerElem& a, const TowerElem& b) { return a.T->mul(a, b); }
inline TowerElem operator/(const TowerElem& a, const TowerElem& b) { return a.T->div(a, b); }
inline bool operator==(const TowerElem& a, const TowerElem& b) { return a.T->eq(a, b); }
inline bool operator!=(const TowerElem& a, const TowerElem& b) { return !a.T->eq(a, b); }

}  // namespace hayes

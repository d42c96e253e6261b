// SPDX-License-Identifier: Apache-2.0
#pragma once

// Runtime finite fields F_{p^m} with m <= 16, elements stored inline as the
// coefficient vector of a residue polynomial. Fields of order <= 256 build
// full multiplication and inverse tables once; the power series layers sit
// on top of these elements, so per-element cost dominates everything there.

#include <array>
#include <cstdint>
#include <memory>

#include "fppoly.hpp"

namespace hayes {

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

struct FFElem {
  const FiniteField* F = nullptr;
  std::array<uint8_t, 16> v{};

  bool is_zero() const {
    for (uint8_t x : v) if (x) return false;
    return true;
  }
  bool operator==(const FFElem& o) const { return F == o.F && v == o.v; }
  bool operator!=(const FFElem& o) const { return !(*this == o); }
};

class FiniteField : public std::enable_shared_from_this<FiniteField> {
 public:
  int p;
  int m;
  uint64_t q;    // p^m
  Poly modulus;  // monic irreducible of degree m over F_p

  static FieldPtr make(int p, int m) {
    return FieldPtr(new FiniteField(p, m, first_irreducible(p, m)));
  }
  static FieldPtr with_modulus(const Poly& mod) {
    return FieldPtr(new FiniteField(mod.p, mod.deg(), mod));
  }

  FFElem zero() const { return FFElem{this, {}}; }
  FFElem one() const { return from_int(1); }

  FFElem from_int(int x) const {
    int r = x % p; if (r < 0) r += p;
    FFElem e{this, {}};
    e.v[0] = uint8_t(r);
    return e;
  }

  // image of x (the residue class of the defining variable)
  FFElem gen() const {
    if (m == 1) return from_int(0);  // no proper generator below the modulus root
    FFElem e{this, {}};
    e.v[1] = 1;
    return e;
  }

  FFElem from_poly(const Poly& a) const {
    if (a.p != p) throw mixed_fields();
    Poly r = a.deg() >= m ? a % modulus : a;
    FFElem e{this, {}};
    for (int i = 0; i <= r.deg(); ++i) e.v[i] = r.c[i];
    return e;
  }

  Poly to_poly(const FFElem& a) const {
    std::vector<uint8_t> c(a.v.begin(), a.v.begin() + m);
    return Poly(p, std::move(c));
  }

  uint64_t rank(const FFElem& a) const {
    uint64_t r = 0;
    for (int i = m - 1; i >= 0; --i) r = r * p + a.v[i];
    return r;
  }

  FFElem from_rank(uint64_t r) const {
    FFElem e{this, {}};
    for (int i = 0; i < m; ++i) { e.v[i] = uint8_t(r % p); r /= p; }
    return e;
  }

  FFElem add(const FFElem& a, const FFElem& b) const {
    check(a, b);
    FFElem r{this, {}};
    for (int i = 0; i < m; ++i) r.v[i] = detail::addm(a.v[i], b.v[i], p);
    return r;
  }

  FFElem sub(const FFElem& a, const FFElem& b) const {
    check(a, b);
    FFElem r{this, {}};
    for (int i = 0; i < m; ++i) r.v[i] = detail::subm(a.v[i], b.v[i], p);
    return r;
  }

  FFElem neg(const FFElem& a) const {
    FFElem r{this, {}};
    for (int i = 0; i < m; ++i) r.v[i] = detail::subm(0, a.v[i], p);
    return r;
  }

  FFElem mul(const FFElem& a, const FFElem& b) const {
    check(a, b);
    if (!mul_lut_.empty()) {
      return from_rank(mul_lut_[rank(a) * q + rank(b)]);
    }
    return mul_generic(a, b);
  }

  FFElem inv(const FFElem& a) const {
    if (a.is_zero()) throw division_by_zero();
    if (!inv_lut_.empty()) return from_rank(inv_lut_[rank(a)]);
    Poly u, v;
    Poly g = xgcd(to_poly(a), modulus, u, v);
    (void)g;
    return from_poly(u);
  }

  FFElem div(const FFElem& a, const FFElem& b) const { return mul(a, inv(b)); }

  FFElem pow(FFElem a, uint64_t e) const {
    FFElem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // x -> x^p, the absolute Frobenius
  FFElem frobenius(const FFElem& a) const {
    FFElem r = zero();
    for (int i = m - 1; i >= 0; --i) {
      r = mul(r, xp_);
      r.v[0] = detail::addm(r.v[0], a.v[i], p);
    }
    return r;
  }

  FFElem frobenius_iter(FFElem a, int k) const {
    k %= m; if (k < 0) k += m;
    for (int i = 0; i < k; ++i) a = frobenius(a);
    return a;
  }

  // minimal polynomial of a over F_p (monic), via the first linear relation
  // among 1, a, a^2, ...
  Poly minpoly(const FFElem& a) const {
    std::vector<std::array<uint8_t, 16>> rows;  // powers of a
    FFElem cur = one();
    for (int k = 0; k <= m; ++k) {
      rows.push_back(cur.v);
      // try to solve rows[0..k-1] combination = rows[k]
      if (k >= 1) {
        // Gaussian elimination on the transpose each time; m <= 16 so this is cheap
        std::vector<std::vector<int>> M(m, std::vector<int>(k + 1, 0));
        for (int i = 0; i < m; ++i) {
          for (int j = 0; j < k; ++j) M[i][j] = rows[j][i];
          M[i][k] = rows[k][i];
        }
        std::vector<int> sol;
        if (solve(M, k, sol)) {
          Poly f(p);
          f.c.resize(k + 1, 0);
          for (int j = 0; j < k; ++j) f.c[j] = detail::subm(0, uint8_t(sol[j]), p);
          f.c[k] = 1;
          return f;
        }
      }
      cur = mul(cur, a);
    }
    throw MathError("minimal polynomial search exceeded field degree");
  }

  static Poly first_irreducible(int p, int m) {
    if (m == 1) return Poly::x(p);
    uint64_t count = 1;
    for (int i = 0; i < m; ++i) count *= uint64_t(p);
    for (uint64_t r = 0; r < count; ++r) {
      Poly f(p);
      f.c.resize(m + 1, 0);
      uint64_t t = r;
      for (int i = 0; i < m; ++i) { f.c[i] = uint8_t(t % p); t /= p; }
      f.c[m] = 1;
      if (is_irreducible(f)) return f;
    }
    throw MathError("no irreducible polynomial found");
  }

  static bool is_irreducible(const Poly& f) {
    int m = f.deg(), p = f.p;
    if (m <= 0) return false;
    if (m == 1) return true;
    Poly x = Poly::x(p);
    Poly t = x;
    for (int i = 0; i < m; ++i) t = pow_mod(t, p, f);
    if (t != x % f) return false;
    for (int l = 2; l <= m; ++l) {
      if (m % l) continue;
      bool prime = true;
      for (int d = 2; d * d <= l; ++d) if (l % d == 0) { prime = false; break; }
      if (!prime) continue;
      Poly s = x;
      for (int i = 0; i < m / l; ++i) s = pow_mod(s, p, f);
      if (!gcd(s - x, f).is_one()) return false;
    }
    return true;
  }

 private:
  FiniteField(int p_, int m_, Poly mod) : p(p_), m(m_), modulus(std::move(mod)) {
    if (!is_small_prime(p)) throw MathError("unsupported characteristic");
    if (m < 1 || m > 16) throw MathError("field degree out of range");
    q = 1;
    for (int i = 0; i < m; ++i) q *= uint64_t(p);
    Poly t = pow_mod(Poly::x(p), uint64_t(p), modulus);
    xp_ = FFElem{this, {}};
    for (int i = 0; i <= t.deg(); ++i) xp_.v[i] = t.c[i];
    if (q <= 256) build_luts();
  }

  FFElem mul_generic(const FFElem& a, const FFElem& b) const {
    std::array<uint32_t, 31> acc{};
    for (int i = 0; i < m; ++i) {
      if (!a.v[i]) continue;
      for (int j = 0; j < m; ++j) acc[i + j] += uint32_t(a.v[i]) * b.v[j];
    }
    for (int i = 2 * m - 2; i >= m; --i) {
      uint32_t f = acc[i] % p;
      if (f) {
        // x^i = x^(i-m) * (x^m mod modulus); modulus is monic
        for (int j = 0; j < m; ++j) {
          uint32_t mj = modulus.c[j];
          if (mj) acc[i - m + j] += f * (p - mj);
        }
      }
      acc[i] = 0;
    }
    FFElem r{this, {}};
    for (int i = 0; i < m; ++i) r.v[i] = uint8_t(acc[i] % p);
    return r;
  }

  void build_luts() {
    mul_lut_.resize(q * q);
    inv_lut_.assign(q, 0);
    for (uint64_t i = 0; i < q; ++i) {
      FFElem a = from_rank(i);
      for (uint64_t j = i; j < q; ++j) {
        FFElem b = from_rank(j);
        uint8_t r = uint8_t(rank(mul_generic(a, b)));
        mul_lut_[i * q + j] = r;
        mul_lut_[j * q + i] = r;
      }
    }
    for (uint64_t i = 1; i < q; ++i) {
      for (uint64_t j = 1; j < q; ++j)
        if (mul_lut_[i * q + j] == 1) { inv_lut_[i] = uint8_t(j); break; }
    }
  }

  void check(const FFElem& a, const FFElem& b) const {
    if (a.F != this || b.F != this) throw mixed_fields();
  }

  // solve M[:,0..k-1] * sol = M[:,k] over F_p
  bool solve(std::vector<std::vector<int>>& M, int k, std::vector<int>& sol) const;

  FFElem xp_{};
  std::vector<uint8_t> mul_lut_;
  std::vector<uint8_t> inv_lut_;
};

inline bool FiniteField::solve(std::vector<std::vector<int>>& M, int k,
                               std::vector<int>& sol) const {
  int rows = int(M.size());
  std::vector<int> pivot_col(rows, -1);
  int r = 0;
  for (int c = 0; c < k && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (M[i][c] % p != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(M[pr], M[r]);
    int inv = detail::invm(uint8_t(M[r][c] % p), p);
    for (int j = c; j <= k; ++j) M[r][j] = (M[r][j] * inv) % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      int f = M[i][c] % p;
      if (!f) continue;
      for (int j = c; j <= k; ++j)
        M[i][j] = ((M[i][j] - f * M[r][j]) % p + p * p) % p;
    }
    pivot_col[r] = c;
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (M[i][k] % p != 0) return false;
  sol.assign(k, 0);
  for (int i = 0; i < r; ++i) sol[pivot_col[i]] = M[i][k] % p;
  return true;
}

}  // namespace hayes

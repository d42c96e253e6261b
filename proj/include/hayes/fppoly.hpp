// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense univariate polynomials over a small prime field F_p, p in {2,3,5,7}.
// Coefficients are stored low-degree-first in bytes with no trailing zeros.
// Multiplication switches between schoolbook, Karatsuba, and a bitsliced
// base case for p=2,3; the coefficient streams downstream reach degrees in
// the hundreds of thousands, so the base case matters.

#include <cstdint>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"

namespace hayes {

inline bool is_small_prime(int p) { return p == 2 || p == 3 || p == 5 || p == 7; }

struct Poly {
  int p = 0;
  std::vector<uint8_t> c;  // c[i] is the coefficient of x^i, c.back() != 0

  Poly() = default;
  explicit Poly(int p) : p(p) {}
  Poly(int p, std::vector<uint8_t> coeffs) : p(p), c(std::move(coeffs)) { trim(); }

  static Poly zero(int p) { return Poly(p); }
  static Poly one(int p) { return Poly(p, {1}); }
  static Poly x(int p) { return Poly(p, {0, 1}); }
  static Poly constant(int p, int v) {
    int r = v % p; if (r < 0) r += p;
    return Poly(p, {static_cast<uint8_t>(r)});
  }

  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
  int deg() const { return static_cast<int>(c.size()) - 1; }  // deg 0 poly -> -1
  uint8_t lead() const { return c.empty() ? 0 : c.back(); }
  uint8_t coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
  bool is_monic() const { return lead() == 1; }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool operator==(const Poly& o) const { return p == o.p && c == o.c; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  bool operator<(const Poly& o) const {  // degree, then lexicographic from the top
    if (c.size() != o.c.size()) return c.size() < o.c.size();
    for (size_t i = c.size(); i-- > 0;)
      if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
  }
};

namespace detail {

inline uint8_t addm(uint8_t a, uint8_t b, int p) { int s = a + b; return uint8_t(s >= p ? s - p : s); }
inline uint8_t subm(uint8_t a, uint8_t b, int p) { int s = a - b; return uint8_t(s < 0 ? s + p : s); }
inline uint8_t mulm(uint8_t a, uint8_t b, int p) { return uint8_t((a * b) % p); }

inline uint8_t invm(uint8_t a, int p) {
  if (a == 0) throw division_by_zero();
  // p <= 7: a^(p-2) by a short loop
  int r = 1, x = a;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = (r * x) % p;
    x = (x * x) % p;
  }
  return uint8_t(r);
}

// ---- bitsliced kernels ----------------------------------------------------

// p=2: one mask per 64 coefficients.
inline void mul_base_gf2(const uint8_t* a, size_t na, const uint8_t* b, size_t nb,
                         uint8_t* out /* na+nb-1 zeroed */) {
  size_t wb = (nb + 63) / 64;
  std::vector<uint64_t> B(wb, 0), acc(wb + (na + 63) / 64 + 1, 0);
  for (size_t i = 0; i < nb; ++i)
    if (b[i]) B[i >> 6] |= uint64_t(1) << (i & 63);
  for (size_t i = 0; i < na; ++i) {
    if (!a[i]) continue;
    size_t w = i >> 6; unsigned sh = i & 63;
    if (sh == 0) {
      for (size_t j = 0; j < wb; ++j) acc[w + j] ^= B[j];
    } else {
      uint64_t carry = 0;
      for (size_t j = 0; j < wb; ++j) {
        acc[w + j] ^= (B[j] << sh) | carry;
        carry = B[j] >> (64 - sh);
      }
      acc[w + wb] ^= carry;
    }
  }
  for (size_t i = 0; i < na + nb - 1; ++i)
    out[i] = uint8_t((acc[i >> 6] >> (i & 63)) & 1);
}

// p=3 digits as bit pairs (lo, hi): 0=(0,0), 1=(1,0), 2=(0,1).
// add: t = (al|bh)^(ah|bl); cl = t^(ah|bh); ch = t^(al|bl). negation swaps planes.
inline void mul_base_gf3(const uint8_t* a, size_t na, const uint8_t* b, size_t nb,
                         uint8_t* out) {
  size_t wb = (nb + 63) / 64;
  std::vector<uint64_t> Bl(wb, 0), Bh(wb, 0);
  for (size_t i = 0; i < nb; ++i) {
    if (b[i] == 1) Bl[i >> 6] |= uint64_t(1) << (i & 63);
    else if (b[i] == 2) Bh[i >> 6] |= uint64_t(1) << (i & 63);
  }
  size_t wout = wb + (na + 63) / 64 + 1;
  std::vector<uint64_t> Al(wout, 0), Ah(wout, 0);
  for (size_t i = 0; i < na; ++i) {
    uint8_t v = a[i];
    if (!v) continue;
    size_t w = i >> 6; unsigned sh = i & 63;
    // shift B by i, swapping planes when v == 2 (multiplying by -1)
    const uint64_t* pl = (v == 1) ? Bl.data() : Bh.data();
    const uint64_t* ph = (v == 1) ? Bh.data() : Bl.data();
    uint64_t cl = 0, ch = 0;
    for (size_t j = 0; j <= wb; ++j) {
      uint64_t sl, sh2;
      if (sh == 0) { sl = j < wb ? pl[j] : 0; sh2 = j < wb ? ph[j] : 0; }
      else {
        sl = ((j < wb ? pl[j] : 0) << sh) | cl;
        sh2 = ((j < wb ? ph[j] : 0) << sh) | ch;
        cl = j < wb ? pl[j] >> (64 - sh) : 0;
        ch = j < wb ? ph[j] >> (64 - sh) : 0;
      }
      uint64_t al = Al[w + j], ah = Ah[w + j];
      uint64_t t = (al | sh2) ^ (ah | sl);
      Al[w + j] = t ^ (ah | sh2);
      Ah[w + j] = t ^ (al | sl);
    }
  }
  for (size_t i = 0; i < na + nb - 1; ++i) {
    uint64_t l = (Al[i >> 6] >> (i & 63)) & 1, h = (Ah[i >> 6] >> (i & 63)) & 1;
    out[i] = uint8_t(l + 2 * h);
  }
}

inline void mul_base_school(const uint8_t* a, size_t na, const uint8_t* b, size_t nb,
                            uint8_t* out, int p) {
  std::vector<uint32_t> acc(na + nb - 1, 0);
  for (size_t i = 0; i < na; ++i) {
    if (!a[i]) continue;
    uint32_t ai = a[i];
    for (size_t j = 0; j < nb; ++j) acc[i + j] += ai * b[j];
    if ((i & 1023) == 1023)  // keep the 32-bit accumulators well clear of overflow
      for (auto& v : acc) v %= p;
  }
  for (size_t i = 0; i < na + nb - 1; ++i) out[i] = uint8_t(acc[i] % p);
}

constexpr size_t kKaratsubaBase = 1024;
constexpr size_t kKaratsubaBaseSchool = 96;

inline void mul_rec(const uint8_t* a, size_t na, const uint8_t* b, size_t nb,
                    uint8_t* out /* zeroed, size na+nb-1 */, int p) {
  if (na == 0 || nb == 0) return;
  if (na > nb) { std::swap(a, b); std::swap(na, nb); }
  size_t base = (p == 2 || p == 3) ? kKaratsubaBase : kKaratsubaBaseSchool;
  if (nb <= base || na <= 16) {
    if (p == 2) mul_base_gf2(a, na, b, nb, out);
    else if (p == 3) mul_base_gf3(a, na, b, nb, out);
    else mul_base_school(a, na, b, nb, out, p);
    return;
  }
  size_t h = (nb + 1) / 2;
  if (na <= h) {
    // unbalanced: split b only
    std::vector<uint8_t> lo(na + h - 1, 0), hi(na + (nb - h) - 1, 0);
    mul_rec(a, na, b, h, lo.data(), p);
    mul_rec(a, na, b + h, nb - h, hi.data(), p);
    for (size_t i = 0; i < lo.size(); ++i) out[i] = addm(out[i], lo[i], p);
    for (size_t i = 0; i < hi.size(); ++i) out[h + i] = addm(out[h + i], hi[i], p);
    return;
  }
  size_t na0 = h, na1 = na - h, nb0 = h, nb1 = nb - h;
  std::vector<uint8_t> z0(na0 + nb0 - 1, 0), z2(na1 + nb1 - 1, 0);
  mul_rec(a, na0, b, nb0, z0.data(), p);
  mul_rec(a + h, na1, b + h, nb1, z2.data(), p);
  size_t ns = std::max(na0, na1), ms = std::max(nb0, nb1);
  std::vector<uint8_t> as(ns, 0), bs(ms, 0);
  for (size_t i = 0; i < ns; ++i) as[i] = addm(i < na0 ? a[i] : 0, i < na1 ? a[h + i] : 0, p);
  for (size_t i = 0; i < ms; ++i) bs[i] = addm(i < nb0 ? b[i] : 0, i < nb1 ? b[h + i] : 0, p);
  std::vector<uint8_t> z1(ns + ms - 1, 0);
  mul_rec(as.data(), ns, bs.data(), ms, z1.data(), p);
  for (size_t i = 0; i < z0.size(); ++i) z1[i] = subm(z1[i], z0[i], p);
  for (size_t i = 0; i < z2.size(); ++i) z1[i] = subm(z1[i], z2[i], p);
  for (size_t i = 0; i < z0.size(); ++i) out[i] = addm(out[i], z0[i], p);
  for (size_t i = 0; i < z1.size(); ++i) out[h + i] = addm(out[h + i], z1[i], p);
  for (size_t i = 0; i < z2.size(); ++i) out[2 * h + i] = addm(out[2 * h + i], z2[i], p);
}

}  // namespace detail

inline Poly operator+(const Poly& a, const Poly& b) {
  if (a.p != b.p) throw mixed_fields();
  Poly r(a.p);
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = detail::addm(a.coeff(i), b.coeff(i), a.p);
  r.trim();
  return r;
}

inline Poly operator-(const Poly& a, const Poly& b) {
  if (a.p != b.p) throw mixed_fields();
  Poly r(a.p);
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = detail::subm(a.coeff(i), b.coeff(i), a.p);
  r.trim();
  return r;
}

inline Poly operator-(const Poly& a) {
  Poly r(a.p);
  r.c.resize(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i)
    r.c[i] = detail::subm(0, a.c[i], a.p);
  return r;
}

inline Poly operator*(const Poly& a, const Poly& b) {
  if (a.p != b.p) throw mixed_fields();
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.p);
  Poly r(a.p);
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  if (a.c.size() + b.c.size() > 2048) {
    // sparse fast path: one operand with a handful of terms (monomials like
    // x^{q^n} show up constantly in twisted evaluations) beats Karatsuba,
    // which would recurse over the zero runs
    auto count_terms = [](const Poly& f) {
      size_t n = 0;
      for (uint8_t x : f.c)
        if (x && ++n > 16) break;
      return n;
    };
    const Poly* s = &a;
    const Poly* d = &b;
    size_t ns = count_terms(a), nd = count_terms(b);
    if (nd < ns) { std::swap(s, d); std::swap(ns, nd); }
    if (ns <= 16) {
      std::vector<uint32_t> acc(r.c.size(), 0);
      for (size_t i = 0; i < s->c.size(); ++i) {
        if (!s->c[i]) continue;
        uint32_t ci = s->c[i];
        for (size_t j = 0; j < d->c.size(); ++j) acc[i + j] += ci * d->c[j];
      }
      for (size_t i = 0; i < acc.size(); ++i) r.c[i] = uint8_t(acc[i] % uint32_t(a.p));
      r.trim();
      return r;
    }
  }
  detail::mul_rec(a.c.data(), a.c.size(), b.c.data(), b.c.size(), r.c.data(), a.p);
  r.trim();
  return r;
}

inline Poly operator*(const Poly& a, int s) {
  int v = s % a.p; if (v < 0) v += a.p;
  if (v == 0) return Poly::zero(a.p);
  Poly r(a.p);
  r.c.resize(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = uint8_t((a.c[i] * v) % a.p);
  return r;
}

// multiply by x^k
inline Poly shift_up(const Poly& a, size_t k) {
  if (a.is_zero()) return a;
  Poly r(a.p);
  r.c.assign(a.c.size() + k, 0);
  std::memcpy(r.c.data() + k, a.c.data(), a.c.size());
  return r;
}

inline void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw division_by_zero();
  if (a.p != b.p) throw mixed_fields();
  int p = a.p;
  q = Poly::zero(p);
  r = a;
  int db = b.deg();
  if (a.deg() < db) return;
  uint8_t linv = detail::invm(b.lead(), p);
  q.c.assign(a.deg() - db + 1, 0);
  while (r.deg() >= db) {
    int k = r.deg() - db;
    uint8_t f = detail::mulm(r.lead(), linv, p);
    q.c[k] = f;
    for (int i = 0; i <= db; ++i)
      r.c[k + i] = detail::subm(r.c[k + i], detail::mulm(f, b.c[i], p), p);
    r.trim();
  }
  q.trim();
}

inline Poly operator/(const Poly& a, const Poly& b) {
  Poly q, r;
  divrem(a, b, q, r);
  return q;
}

inline Poly operator%(const Poly& a, const Poly& b) {
  Poly q, r;
  divrem(a, b, q, r);
  return r;
}

inline Poly exact_div(const Poly& a, const Poly& b) {
  Poly q, r;
  divrem(a, b, q, r);
  if (!r.is_zero()) throw inexact_division("F_p[x]");
  return q;
}

inline Poly monic(const Poly& a) {
  if (a.is_zero() || a.lead() == 1) return a;
  uint8_t f = detail::invm(a.lead(), a.p);
  Poly r(a.p);
  r.c.resize(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = detail::mulm(a.c[i], f, a.p);
  return r;
}

inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// g = gcd(a,b) = u*a + v*b
inline Poly xgcd(const Poly& a, const Poly& b, Poly& u, Poly& v) {
  int p = a.p;
  Poly r0 = a, r1 = b;
  Poly u0 = Poly::one(p), u1 = Poly::zero(p);
  Poly v0 = Poly::zero(p), v1 = Poly::one(p);
  while (!r1.is_zero()) {
    Poly q, r;
    divrem(r0, r1, q, r);
    r0 = std::move(r1); r1 = std::move(r);
    Poly u2 = u0 - q * u1; u0 = std::move(u1); u1 = std::move(u2);
    Poly v2 = v0 - q * v1; v0 = std::move(v1); v1 = std::move(v2);
  }
  if (!r0.is_zero() && r0.lead() != 1) {
    uint8_t f = detail::invm(r0.lead(), p);
    r0 = r0 * f; u0 = u0 * f; v0 = v0 * f;
  }
  u = u0; v = v0;
  return r0;
}

inline Poly derivative(const Poly& a) {
  Poly r(a.p);
  if (a.deg() < 1) return r;
  r.c.resize(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i)
    r.c[i - 1] = uint8_t((a.c[i] * (i % a.p)) % a.p);
  r.trim();
  return r;
}

inline uint8_t eval(const Poly& a, uint8_t x) {
  int acc = 0;
  for (size_t i = a.c.size(); i-- > 0;) acc = (acc * x + a.c[i]) % a.p;
  return uint8_t(acc);
}

inline Poly pow_mod(Poly base, uint64_t e, const Poly& mod) {
  Poly r = Poly::one(base.p);
  base = base % mod;
  while (e) {
    if (e & 1) r = (r * base) % mod;
    base = (base * base) % mod;
    e >>= 1;
  }
  return r;
}

// substitute x -> x^stride; in characteristic p with prime-field coefficients
// this is the Frobenius q^k-power of the polynomial when stride = q^k
inline Poly spread(const Poly& a, uint64_t stride) {
  if (a.is_zero() || stride == 1) return a;
  Poly r(a.p);
  r.c.assign(uint64_t(a.c.size() - 1) * stride + 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i]) r.c[i * stride] = a.c[i];
  return r;
}

inline Poly random_poly(int p, int deg, std::mt19937_64& rng, bool monic_out = false) {
  Poly r(p);
  if (deg < 0) return r;
  r.c.resize(deg + 1);
  for (int i = 0; i <= deg; ++i) r.c[i] = uint8_t(rng() % p);
  if (monic_out) r.c[deg] = 1;
  else if (r.c[deg] == 0) r.c[deg] = 1;
  return r;
}

inline std::string to_string(const Poly& a, const std::string& var = "x") {
  if (a.is_zero()) return "0";
  std::string s;
  for (int i = a.deg(); i >= 0; --i) {
    uint8_t v = a.c[i];
    if (!v) continue;
    if (!s.empty()) s += "+";
    if (i == 0) { s += std::to_string(int(v)); continue; }
    if (v != 1) s += std::to_string(int(v)) + "*";
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

}  // namespace hayes

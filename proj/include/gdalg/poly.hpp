/**
 * @file poly.hpp
 * @brief Univariate polynomials over a finite field and their factorization.
 *
 * A polynomial is a coefficient vector, constant term first, with no
 * trailing zeros (the zero polynomial is empty).
 */
#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace gdalg {

using Poly = std::vector<Log>;

namespace poly {

inline void trim(Poly& a) {
  while (!a.empty() && a.back() < 0) a.pop_back();
}

inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly constant(Log c) {
  Poly a{c};
  trim(a);
  return a;
}

inline Poly x() { return Poly{kZero, 0}; }

inline Poly add(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), kZero);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(i < a.size() ? a[i] : kZero, i < b.size() ? b[i] : kZero);
  trim(r);
  return r;
}

inline Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), kZero);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.sub(i < a.size() ? a[i] : kZero, i < b.size() ? b[i] : kZero);
  trim(r);
  return r;
}

inline Poly scale(const Field& F, Log c, const Poly& a) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
  trim(r);
  return r;
}

inline Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, kZero);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] >= 0) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

inline std::pair<Poly, Poly> divmod(const Field& F, Poly a, const Poly& b) {
  require(!b.empty(), "division_by_zero", "polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1, kZero);
  const Log lead_inv = F.inv(b.back());
  for (int i = deg(a); i >= deg(b); --i) {
    if (a[i] < 0) continue;
    const Log c = F.mul(a[i], lead_inv);
    const int s = i - deg(b);
    q[s] = c;
    const Log nc = F.neg(c);
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] >= 0) a[s + j] = F.add(a[s + j], F.mul(nc, b[j]));
  }
  trim(q);
  trim(a);
  return {q, a};
}

inline Poly rem(const Field& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

inline Poly monic(const Field& F, const Poly& a) {
  if (a.empty()) return a;
  return scale(F, F.inv(a.back()), a);
}

inline Poly gcd(const Field& F, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

// Returns (g, s, t) with g = s a + t b and g monic.
inline std::tuple<Poly, Poly, Poly> ext_gcd(const Field& F, Poly a, Poly b) {
  Poly s0{0}, s1{}, t0{}, t1{0};
  while (!b.empty()) {
    auto [q, r] = divmod(F, a, b);
    a = std::move(b);
    b = std::move(r);
    Poly s2 = sub(F, s0, mul(F, q, s1));
    Poly t2 = sub(F, t0, mul(F, q, t1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.empty()) return {a, s0, t0};
  const Log li = F.inv(a.back());
  return {scale(F, li, a), scale(F, li, s0), scale(F, li, t0)};
}

inline Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m) {
  return rem(F, mul(F, a, b), m);
}

inline Poly powmod(const Field& F, Poly base, unsigned long long e, const Poly& m) {
  Poly r = rem(F, Poly{0}, m);
  base = rem(F, base, m);
  while (e > 0) {
    if (e & 1) r = mulmod(F, r, base, m);
    base = mulmod(F, base, base, m);
    e >>= 1;
  }
  return r;
}

inline Poly derivative(const Field& F, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(F.from_int(static_cast<long long>(i)), a[i]);
  trim(r);
  return r;
}

inline Log eval(const Field& F, const Poly& a, Log x) {
  Log acc = kZero;
  for (int i = deg(a); i >= 0; --i) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

namespace detail {

// a(x) = b(x)^p for some b; returns b.
inline Poly pth_root(const Field& F, const Poly& a) {
  const int p = F.p();
  Poly r(a.size() / p + 1, kZero);
  for (std::size_t i = 0; i < a.size(); i += p) r[i / p] = F.frob(a[i], F.m() - 1);
  trim(r);
  return r;
}

inline bool less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Squarefree decomposition of a monic polynomial: pairs (g_i, i) with
// f = prod g_i^i and each g_i squarefree.
inline void squarefree(const Field& F, const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  if (deg(f) <= 0) return;
  Poly d = derivative(F, f);
  if (d.empty()) {
    squarefree(F, pth_root(F, f), mult * F.p(), out);
    return;
  }
  Poly c = gcd(F, f, d);
  Poly w = divmod(F, f, c).first;
  int i = 1;
  while (deg(w) > 0) {
    Poly y = gcd(F, w, c);
    Poly z = divmod(F, w, y).first;
    if (deg(z) > 0) out.emplace_back(monic(F, z), i * mult);
    ++i;
    w = y;
    c = divmod(F, c, y).first;
  }
  if (deg(c) > 0) squarefree(F, pth_root(F, c), mult * F.p(), out);
}

// Berlekamp splitting of a squarefree monic polynomial.
inline std::vector<Poly> berlekamp(const Field& F, const Poly& f) {
  const int d = deg(f);
  if (d <= 1) return {f};
  Matrix Q(d, d);
  Poly xq = powmod(F, x(), static_cast<unsigned long long>(F.q()), f);
  Poly cur{0};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) Q(j, i) = j < static_cast<int>(cur.size()) ? cur[j] : kZero;
    cur = mulmod(F, cur, xq, f);
  }
  for (int i = 0; i < d; ++i) Q(i, i) = F.sub(Q(i, i), 0);
  auto ker = la::kernel(F, Q);
  const std::size_t k = ker.size();
  std::vector<Poly> factors{f};
  if (k == 1) return factors;
  for (const Vec& v : ker) {
    Poly g(v.begin(), v.end());
    trim(g);
    if (deg(g) <= 0) continue;
    std::vector<Poly> next;
    for (const Poly& u : factors) {
      Poly rest = u;
      if (deg(rest) > 1 && factors.size() < k) {
        for (Log s = kZero; s < F.q() - 1 && deg(rest) > 0; ++s) {
          Poly h = gcd(F, rest, sub(F, g, constant(s)));
          if (deg(h) > 0 && deg(h) < deg(rest)) {
            next.push_back(h);
            rest = divmod(F, rest, h).first;
          }
        }
      }
      if (deg(rest) > 0) next.push_back(rest);
    }
    factors = std::move(next);
    if (factors.size() == k) break;
  }
  ensure(factors.size() == k, "Berlekamp split incomplete");
  return factors;
}

}  // namespace detail

// Monic irreducible factors with multiplicities, sorted by degree then
// coefficients.
inline std::vector<std::pair<Poly, int>> factor(const Field& F, const Poly& f) {
  require(!f.empty(), "bad_argument", "cannot factor the zero polynomial");
  std::vector<std::pair<Poly, int>> sq;
  detail::squarefree(F, monic(F, f), 1, sq);
  std::vector<std::pair<Poly, int>> out;
  for (auto& [g, e] : sq)
    for (Poly& h : detail::berlekamp(F, g)) out.emplace_back(monic(F, h), e);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (detail::less(a.first, b.first)) return true;
    if (detail::less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  // merge repeated factors coming from different squarefree layers
  std::vector<std::pair<Poly, int>> merged;
  for (auto& pr : out) {
    if (!merged.empty() && merged.back().first == pr.first)
      merged.back().second += pr.second;
    else
      merged.push_back(pr);
  }
  return merged;
}

inline bool is_irreducible(const Field& F, const Poly& f) {
  if (deg(f) < 1) return false;
  auto fs = factor(F, f);
  return fs.size() == 1 && fs[0].second == 1;
}

}  // namespace poly
}  // namespace gdalg

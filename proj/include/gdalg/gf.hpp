/**
 * @file gf.hpp
 * @brief Finite fields GF(p^m) in discrete-log form, with Zech addition.
 *
 * An element is stored as its discrete logarithm with respect to a fixed
 * primitive root ω (the class of x modulo the defining polynomial), or as
 * kZero. Fields are interned, so two handles to the same field compare equal
 * by pointer.
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"

namespace gdalg {

using Log = std::int32_t;
inline constexpr Log kZero = -1;
inline constexpr long kFieldCap = 1L << 16;

namespace detail {

inline long long mod(long long a, long long m) {
  a %= m;
  return a < 0 ? a + m : a;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

struct FieldData {
  int p = 0;
  int m = 0;
  int q = 0;
  std::vector<int> defpoly;   // m+1 coefficients over GF(p), constant first, monic
  std::vector<int> exp_code;  // exp_code[k] = code of ω^k
  std::vector<Log> log_of;    // code -> dlog
  std::vector<Log> zech;      // zech[k] = dlog(1 + ω^k)
  Log neg_one = 0;
};

// Codes are base-p digit strings with the constant coefficient least
// significant. Returns the table of codes of x^k when x has multiplicative
// order p^m - 1 modulo f, and an empty vector otherwise.
inline std::vector<int> power_codes(int p, int m, const std::vector<int>& f) {
  const int q = static_cast<int>(ipow(p, m));
  std::vector<int> codes(q - 1);
  std::vector<int> cur(m, 0);
  cur[0] = 1;
  auto encode = [&](const std::vector<int>& v) {
    int c = 0;
    for (int i = m - 1; i >= 0; --i) c = c * p + v[i];
    return c;
  };
  for (int k = 0; k < q - 1; ++k) {
    const int code = encode(cur);
    if (k > 0 && code == 1) return {};
    codes[k] = code;
    const int top = cur[m - 1];
    for (int i = m - 1; i >= 1; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (int i = 0; i < m; ++i) cur[i] = static_cast<int>(mod(cur[i] - top * f[i], p));
  }
  if (encode(cur) != 1) return {};
  return codes;
}

// x^e modulo (p, f), f monic of degree m.
inline std::vector<int> xpow_mod(int p, const std::vector<int>& f, long e) {
  const int m = static_cast<int>(f.size()) - 1;
  auto mulmod = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<long> r(2 * m - 1, 0);
    for (int i = 0; i < m; ++i)
      if (a[i])
        for (int j = 0; j < m; ++j) r[i + j] += static_cast<long>(a[i]) * b[j];
    for (auto& v : r) v %= p;
    for (int k = 2 * m - 2; k >= m; --k) {
      const long c = r[k];
      if (!c) continue;
      for (int i = 0; i <= m; ++i) r[k - m + i] = mod(r[k - m + i] - c * f[i], p);
    }
    std::vector<int> out(m);
    for (int i = 0; i < m; ++i) out[i] = static_cast<int>(r[i]);
    return out;
  };
  std::vector<int> res(m, 0), base(m, 0);
  res[0] = 1;
  if (m == 1)
    base[0] = static_cast<int>(mod(-f[0], p));
  else
    base[1] = 1;
  while (e > 0) {
    if (e & 1) res = mulmod(res, base);
    base = mulmod(base, base);
    e >>= 1;
  }
  return res;
}

// x has order p^m - 1 modulo f
inline bool is_primitive(int p, const std::vector<int>& f) {
  const int m = static_cast<int>(f.size()) - 1;
  if (f[0] == 0) return false;
  const long n = ipow(p, m) - 1;
  std::vector<int> one(m, 0);
  one[0] = 1;
  if (xpow_mod(p, f, n) != one) return false;
  long r = n;
  for (long d = 2; d * d <= r; ++d) {
    if (r % d) continue;
    while (r % d == 0) r /= d;
    if (xpow_mod(p, f, n / d) == one) return false;
  }
  if (r > 1 && xpow_mod(p, f, n / r) == one) return false;
  return true;
}

inline std::shared_ptr<FieldData> build_field(int p, int m, std::vector<int> f,
                                              std::vector<int> codes) {
  auto d = std::make_shared<FieldData>();
  d->p = p;
  d->m = m;
  d->q = static_cast<int>(ipow(p, m));
  d->defpoly = std::move(f);
  d->exp_code = std::move(codes);
  d->log_of.assign(d->q, kZero);
  for (int k = 0; k < d->q - 1; ++k) d->log_of[d->exp_code[k]] = k;
  d->zech.resize(d->q - 1);
  for (int k = 0; k < d->q - 1; ++k) {
    const int c = d->exp_code[k];
    const int d0 = c % p;
    d->zech[k] = d->log_of[c - d0 + (d0 + 1) % p];
  }
  d->neg_one = p == 2 ? 0 : (d->q - 1) / 2;
  return d;
}

inline std::vector<int> candidate_poly(int p, int m, long idx) {
  std::vector<int> f(m + 1, 0);
  f[m] = 1;
  for (int i = m - 1; i >= 0; --i) {
    f[i] = static_cast<int>(idx % p);
    idx /= p;
  }
  return f;
}

struct Registry {
  std::mutex mu;
  std::map<std::vector<int>, std::shared_ptr<const FieldData>> by_poly;  // key: p, defpoly...
  std::map<std::pair<int, int>, std::shared_ptr<const FieldData>> canonical;
  std::map<std::pair<std::vector<int>, int>, std::shared_ptr<const FieldData>> compatible;
};

inline Registry& registry() {
  static Registry r;
  return r;
}

inline std::shared_ptr<const FieldData> intern(std::shared_ptr<FieldData> d) {
  std::vector<int> key{d->p};
  key.insert(key.end(), d->defpoly.begin(), d->defpoly.end());
  auto& slot = registry().by_poly[key];
  if (!slot) slot = std::move(d);
  return slot;
}

}  // namespace detail

class Field {
 public:
  Field() = default;

  // GF(p^m) with the least primitive defining polynomial, coefficient lists
  // compared constant term first.
  static Field create(int p, int m) {
    require(detail::is_prime(p) && m >= 1, "bad_field", "p must be prime and m >= 1");
    require(detail::ipow(p, m) <= kFieldCap, "field_too_large",
            "GF(" + std::to_string(p) + "^" + std::to_string(m) + ") exceeds 2^16 elements");
    auto& reg = detail::registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.canonical.find({p, m});
    if (it != reg.canonical.end()) return Field(it->second);
    const long total = detail::ipow(p, m);
    for (long idx = 0; idx < total; ++idx) {
      auto f = detail::candidate_poly(p, m, idx);
      if (!detail::is_primitive(p, f)) continue;
      auto codes = detail::power_codes(p, m, f);
      auto d = detail::intern(detail::build_field(p, m, std::move(f), std::move(codes)));
      reg.canonical[{p, m}] = d;
      return Field(d);
    }
    throw InternalError("no primitive polynomial found");
  }

  // GF(p^m) whose primitive root ω satisfies: ω^((q-1)/(q_base-1)) is the
  // primitive root of base. Least such defining polynomial.
  static Field create_compatible(int m, const Field& base) {
    require(base.valid() && m % base.m() == 0, "bad_tower", "degree not a multiple of the base degree");
    const int p = base.p();
    require(detail::ipow(p, m) <= kFieldCap, "field_too_large",
            "GF(" + std::to_string(p) + "^" + std::to_string(m) + ") exceeds 2^16 elements");
    auto& reg = detail::registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    std::vector<int> bkey{p};
    bkey.insert(bkey.end(), base.defpoly().begin(), base.defpoly().end());
    auto it = reg.compatible.find({bkey, m});
    if (it != reg.compatible.end()) return Field(it->second);
    const long total = detail::ipow(p, m);
    const long q = total;
    const long index = (q - 1) / (base.q() - 1);
    const auto& g = base.defpoly();
    for (long idx = 0; idx < total; ++idx) {
      auto f = detail::candidate_poly(p, m, idx);
      if (!detail::is_primitive(p, f)) continue;
      // evaluate g at y = x^index
      std::vector<int> acc(m, 0);
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0) continue;
        auto c = detail::xpow_mod(p, f, (index * static_cast<long>(i)) % (q - 1));
        for (int k = 0; k < m; ++k) acc[k] = (acc[k] + g[i] * c[k]) % p;
      }
      bool vanishes = true;
      for (int v : acc) vanishes = vanishes && v == 0;
      if (!vanishes) continue;
      auto codes = detail::power_codes(p, m, f);
      auto d = detail::intern(detail::build_field(p, m, std::move(f), std::move(codes)));
      reg.compatible[{bkey, m}] = d;
      return Field(d);
    }
    throw InternalError("no compatible primitive polynomial found");
  }

  // Field with an explicit defining polynomial (must be primitive).
  static Field from_defpoly(int p, const std::vector<int>& f) {
    require(detail::is_prime(p) && f.size() >= 2 && f.back() == 1, "bad_field",
            "defining polynomial must be monic of degree >= 1");
    const int m = static_cast<int>(f.size()) - 1;
    require(detail::ipow(p, m) <= kFieldCap, "field_too_large", "field exceeds 2^16 elements");
    for (int c : f) require(c >= 0 && c < p, "bad_field", "coefficient out of range");
    auto codes = detail::power_codes(p, m, f);
    require(!codes.empty(), "not_primitive", "defining polynomial is not primitive");
    auto& reg = detail::registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    return Field(detail::intern(detail::build_field(p, m, f, std::move(codes))));
  }

  bool valid() const { return d_ != nullptr; }
  int p() const { return d_->p; }
  int m() const { return d_->m; }
  int q() const { return d_->q; }
  int units() const { return d_->q - 1; }
  const std::vector<int>& defpoly() const { return d_->defpoly; }
  std::string name() const { return "GF(" + std::to_string(p()) + "^" + std::to_string(m()) + ")"; }

  bool operator==(const Field& o) const { return d_ == o.d_; }
  bool operator!=(const Field& o) const { return d_ != o.d_; }

  static constexpr Log zero() { return kZero; }
  static constexpr Log one() { return 0; }

  Log add(Log a, Log b) const {
    if (a < 0) return b;
    if (b < 0) return a;
    const int qm1 = d_->q - 1;
    int diff = b - a;
    if (diff < 0) diff += qm1;
    const Log z = d_->zech[diff];
    if (z < 0) return kZero;
    int r = a + z;
    if (r >= qm1) r -= qm1;
    return r;
  }
  Log neg(Log a) const {
    if (a < 0) return a;
    int r = a + d_->neg_one;
    if (r >= d_->q - 1) r -= d_->q - 1;
    return r;
  }
  Log sub(Log a, Log b) const { return add(a, neg(b)); }
  Log mul(Log a, Log b) const {
    if (a < 0 || b < 0) return kZero;
    int r = a + b;
    if (r >= d_->q - 1) r -= d_->q - 1;
    return r;
  }
  Log inv(Log a) const {
    require(a >= 0, "division_by_zero", "inverse of zero");
    return a == 0 ? 0 : d_->q - 1 - a;
  }
  Log div(Log a, Log b) const { return mul(a, inv(b)); }
  Log pow(Log a, long long n) const {
    if (a < 0) {
      require(n >= 0, "division_by_zero", "negative power of zero");
      return n == 0 ? 0 : kZero;
    }
    return static_cast<Log>(detail::mod(static_cast<long long>(a) * detail::mod(n, d_->q - 1), d_->q - 1));
  }
  // x -> x^(p^j)
  Log frob(Log a, long j) const {
    if (a < 0) return a;
    long long f = 1;
    for (long i = 0; i < detail::mod(j, m()); ++i) f = f * p() % (q() - 1);
    return static_cast<Log>(static_cast<long long>(a) * f % (q() - 1));
  }

  // multiplicative order of a nonzero element
  long order(Log a) const {
    require(a >= 0, "division_by_zero", "order of zero");
    const long n = q() - 1;
    return n / std::gcd(static_cast<long>(a), n);
  }

  // primitive N-th root ω^((q-1)/N)
  Log omega(long N) const {
    require(N >= 1 && (q() - 1) % N == 0, "no_root_of_unity",
            name() + " has no primitive " + std::to_string(N) + "-th root of unity");
    return static_cast<Log>((q() - 1) / N % (q() - 1));
  }

  Log from_int(long long k) const { return d_->log_of[detail::mod(k, p())]; }
  int code(Log a) const { return a < 0 ? 0 : d_->exp_code[a]; }
  Log from_code(int c) const { return d_->log_of[c]; }
  // coefficients over GF(p) in the basis 1, ω, ..., ω^(m-1)
  std::vector<int> coeffs(Log a) const {
    std::vector<int> v(m());
    int c = code(a);
    for (int i = 0; i < m(); ++i) {
      v[i] = c % p();
      c /= p();
    }
    return v;
  }
  // integer value of an element of the prime field
  int prime_value(Log a) const {
    const int c = code(a);
    require(c < p(), "not_in_prime_field", "element is not in the prime field");
    return c;
  }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> d_;
};

// [1/N] section: for x = ω_M^j (M = ord x, 0 <= j < M) returns ω_{MN}^j.
inline Log root_section(const Field& f, long N, Log x) {
  require(x >= 0, "division_by_zero", "root section of zero");
  require(N >= 1, "bad_argument", "N must be positive");
  const long qm1 = f.q() - 1;
  const long M = f.order(x);
  require(qm1 % (M * N) == 0, "insufficient_roots",
          f.name() + " lacks the roots of unity needed for the [1/" + std::to_string(N) + "] section");
  const long j = x / (qm1 / M);
  return static_cast<Log>(j * (qm1 / (M * N)));
}

class FieldElt {
 public:
  FieldElt() = default;
  FieldElt(Field f, Log l) : f_(std::move(f)), l_(l) {
    require(l_ >= kZero && l_ < f_.q() - 1, "bad_element", "dlog out of range");
  }
  static FieldElt zero(const Field& f) { return FieldElt(f, kZero); }
  static FieldElt one(const Field& f) { return FieldElt(f, 0); }

  const Field& field() const { return f_; }
  Log dlog() const { return l_; }
  bool is_zero() const { return l_ < 0; }

  FieldElt inverse() const { return FieldElt(f_, f_.inv(l_)); }
  FieldElt pow(long long n) const { return FieldElt(f_, f_.pow(l_, n)); }
  FieldElt operator-() const { return FieldElt(f_, f_.neg(l_)); }

  friend FieldElt operator+(const FieldElt& a, const FieldElt& b) { return {a.f_, a.f_.add(a.l_, same(a, b))}; }
  friend FieldElt operator-(const FieldElt& a, const FieldElt& b) { return {a.f_, a.f_.sub(a.l_, same(a, b))}; }
  friend FieldElt operator*(const FieldElt& a, const FieldElt& b) { return {a.f_, a.f_.mul(a.l_, same(a, b))}; }
  friend FieldElt operator/(const FieldElt& a, const FieldElt& b) { return {a.f_, a.f_.div(a.l_, same(a, b))}; }
  friend bool operator==(const FieldElt& a, const FieldElt& b) { return a.f_ == b.f_ && a.l_ == b.l_; }
  friend bool operator!=(const FieldElt& a, const FieldElt& b) { return !(a == b); }

 private:
  static Log same(const FieldElt& a, const FieldElt& b) {
    require(a.f_ == b.f_, "mixed_fields", "operands live in different fields");
    return b.l_;
  }
  Field f_;
  Log l_ = kZero;
};

namespace detail {

struct TowerData {
  Field base;
  Field top;
  int n = 0;
  long index = 0;
  std::vector<Log> coords;  // (log+1)*n .. : coordinates over base in basis ω_L^0..ω_L^(n-1)
};

}  // namespace detail

// F = GF(p^e) inside L = GF(p^(en)) with ω_F = ω_L^index.
class Tower {
 public:
  Tower() = default;

  static Tower create(const Field& base, int n) {
    require(base.valid() && n >= 1, "bad_tower", "degree must be positive");
    static std::mutex mu;
    static std::map<std::pair<const void*, int>, std::shared_ptr<const detail::TowerData>> cache;
    const long qtop = detail::ipow(base.p(), base.m() * n);
    require(qtop <= kFieldCap, "field_too_large",
            "GF(" + std::to_string(base.p()) + "^" + std::to_string(base.m() * n) + ") exceeds 2^16 elements");
    Field top = Field::create_compatible(base.m() * n, base);
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<const void*>(&base.defpoly()), n);
    auto it = cache.find(key);
    if (it != cache.end()) return Tower(it->second);
    auto d = std::make_shared<detail::TowerData>();
    d->base = base;
    d->top = top;
    d->n = n;
    d->index = (top.q() - 1) / (base.q() - 1);
    d->coords.assign(static_cast<std::size_t>(top.q()) * n, kZero);
    std::vector<Log> c(n, kZero);
    const long total = top.q();
    for (long t = 0; t < total; ++t) {
      long r = t;
      for (int i = 0; i < n; ++i) {
        c[i] = r % base.q() == 0 ? kZero : static_cast<Log>(r % base.q() - 1);
        r /= base.q();
      }
      Log x = kZero;
      for (int i = 0; i < n; ++i)
        if (c[i] >= 0) x = top.add(x, top.mul(static_cast<Log>(c[i] * d->index), i));
      std::copy(c.begin(), c.end(), d->coords.begin() + static_cast<long>(x + 1) * n);
    }
    cache[key] = d;
    return Tower(d);
  }

  const Field& base() const { return d_->base; }
  const Field& top() const { return d_->top; }
  int degree() const { return d_->n; }
  long index() const { return d_->index; }

  Log embed(Log b) const { return b < 0 ? kZero : static_cast<Log>(b * d_->index); }
  bool in_base(Log t) const { return t < 0 || t % d_->index == 0; }
  Log to_base(Log t) const {
    require(in_base(t), "not_in_base", "element does not lie in the base field");
    return t < 0 ? kZero : static_cast<Log>(t / d_->index);
  }
  // x -> x^(p^j)
  Log frobenius(long j, Log x) const { return top().frob(x, j); }
  // N_{L/F}(x) = x^index, returned as a base-field dlog
  Log norm(Log x) const {
    if (x < 0) return kZero;
    return static_cast<Log>(x % (base().q() - 1));
  }
  // coordinates over F in the basis 1, ω_L, ..., ω_L^(n-1)
  const Log* coords(Log x) const { return d_->coords.data() + static_cast<long>(x + 1) * d_->n; }
  Log from_coords(const Log* c) const {
    Log x = kZero;
    for (int i = 0; i < d_->n; ++i)
      if (c[i] >= 0) x = top().add(x, top().mul(embed(c[i]), i));
    return x;
  }

 private:
  explicit Tower(std::shared_ptr<const detail::TowerData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::TowerData> d_;
};

}  // namespace gdalg

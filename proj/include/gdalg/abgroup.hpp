/**
 * @file abgroup.hpp
 * @brief Finite abelian groups, subgroups, quotients and (bi)characters.
 *
 * An AbGroup is Z/d_1 x ... x Z/d_r written additively. Elements are handled
 * as integer indices: the mixed-radix encoding of the residue tuple with the
 * first coordinate most significant, so index order is lexicographic order
 * on tuples.
 */
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "gf.hpp"

namespace gdalg {

inline constexpr int kGroupCap = 1 << 12;
inline constexpr int kEnumCap = 256;

class AbGroup {
 public:
  AbGroup() : size_(1) {}
  explicit AbGroup(std::vector<int> orders) : orders_(std::move(orders)) {
    long sz = 1;
    for (int d : orders_) {
      require(d >= 1, "bad_group", "cyclic factor orders must be positive");
      sz *= d;
      require(sz <= kGroupCap, "group_too_large", "group order exceeds 4096");
    }
    size_ = static_cast<int>(sz);
    strides_.assign(orders_.size(), 1);
    for (int i = static_cast<int>(orders_.size()) - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * orders_[i + 1];
  }

  const std::vector<int>& orders() const { return orders_; }
  int rank() const { return static_cast<int>(orders_.size()); }
  int size() const { return size_; }
  std::string name() const {
    if (orders_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < orders_.size(); ++i) s += (i ? "x" : "") + std::to_string(orders_[i]);
    return s;
  }
  friend bool operator==(const AbGroup& a, const AbGroup& b) { return a.orders_ == b.orders_; }
  friend bool operator!=(const AbGroup& a, const AbGroup& b) { return !(a == b); }

  std::vector<int> tuple(int e) const {
    std::vector<int> t(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) t[i] = e / strides_[i] % orders_[i];
    return t;
  }
  int index(const std::vector<int>& t) const {
    require(t.size() == orders_.size(), "bad_element", "tuple length does not match the group rank");
    int e = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i)
      e += static_cast<int>(detail::mod(t[i], orders_[i])) * strides_[i];
    return e;
  }
  int gen(int i) const { return strides_[i]; }

  int add(int a, int b) const {
    int e = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      int s = a / strides_[i] % orders_[i] + b / strides_[i] % orders_[i];
      if (s >= orders_[i]) s -= orders_[i];
      e += s * strides_[i];
    }
    return e;
  }
  int neg(int a) const {
    int e = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const int s = a / strides_[i] % orders_[i];
      e += (s == 0 ? 0 : orders_[i] - s) * strides_[i];
    }
    return e;
  }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int times(int a, long k) const {
    int e = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const long s = a / strides_[i] % orders_[i];
      e += static_cast<int>(detail::mod(s * k, orders_[i])) * strides_[i];
    }
    return e;
  }
  int order_of(int a) const {
    long o = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const long s = a / strides_[i] % orders_[i];
      o = std::lcm(o, static_cast<long>(orders_[i] / std::gcd(static_cast<long>(orders_[i]), s)));
    }
    return static_cast<int>(o);
  }
  int exponent() const {
    long o = 1;
    for (int d : orders_) o = std::lcm(o, static_cast<long>(d));
    return static_cast<int>(o);
  }

 private:
  std::vector<int> orders_;
  std::vector<int> strides_;
  int size_ = 1;
};

namespace detail {

inline std::vector<int> prime_factors(long n) {
  std::vector<int> ps;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      ps.push_back(static_cast<int>(d));
      while (n % d == 0) n /= d;
    }
  if (n > 1) ps.push_back(static_cast<int>(n));
  return ps;
}

// Basis of a finite abelian group on ids 0..n-1 (id 0 the identity), as
// (id, order) pairs in ascending invariant-factor order. Choices prefer
// smaller ids, so the result is deterministic.
inline std::vector<std::pair<int, int>> abstract_basis(int n, const std::function<int(int, int)>& add) {
  if (n == 1) return {};
  std::vector<int> ord(n, 1);
  for (int x = 1; x < n; ++x) {
    int y = x, k = 1;
    while (y != 0) {
      y = add(y, x);
      ++k;
    }
    ord[x] = k;
  }
  std::vector<std::vector<std::pair<int, int>>> parts;  // per prime, descending order
  for (int p : prime_factors(n)) {
    std::vector<int> P;
    for (int x = 0; x < n; ++x) {
      int o = ord[x];
      while (o % p == 0) o /= p;
      if (o == 1) P.push_back(x);
    }
    // type via counts c_k = #{x in P : p^k x = 0}
    std::vector<long> cnt{1};
    for (long pk = p;; pk *= p) {
      long c = 0;
      for (int x : P)
        if (pk % ord[x] == 0) ++c;
      cnt.push_back(c);
      if (c == static_cast<long>(P.size())) break;
    }
    auto lg = [&](long v) {
      int e = 0;
      while (v > 1) {
        v /= p;
        ++e;
      }
      return e;
    };
    // r_k = number of cyclic factors of order >= p^k
    std::vector<int> need;  // orders, descending
    const int K = static_cast<int>(cnt.size()) - 1;
    for (int k = K; k >= 1; --k) {
      const int rk = lg(cnt[k]) - lg(cnt[k - 1]);
      const int rk1 = k + 1 <= K ? lg(cnt[k + 1]) - lg(cnt[k]) : 0;
      long pk = 1;
      for (int i = 0; i < k; ++i) pk *= p;
      for (int i = 0; i < rk - rk1; ++i) need.push_back(static_cast<int>(pk));
    }
    // depth-first search for an independent tuple with these orders
    std::vector<std::pair<int, int>> chosen;
    std::vector<char> in_span(n, 0);
    in_span[0] = 1;
    std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
      if (i == need.size()) return true;
      for (int x : P) {
        if (ord[x] != need[i] || in_span[x]) continue;
        bool indep = true;
        for (int j = 1, y = x; j < need[i]; ++j, y = add(y, x))
          if (in_span[y]) {
            indep = false;
            break;
          }
        if (!indep) continue;
        std::vector<char> saved = in_span;
        std::vector<int> span;
        for (int s = 0; s < n; ++s)
          if (saved[s]) span.push_back(s);
        for (int s : span)
          for (int j = 1, y = add(s, x); j < need[i]; ++j, y = add(y, x)) in_span[y] = 1;
        chosen.emplace_back(x, need[i]);
        if (dfs(i + 1)) return true;
        chosen.pop_back();
        in_span = std::move(saved);
      }
      return false;
    };
    ensure(dfs(0), "no basis found for p-primary part");
    parts.push_back(chosen);
  }
  std::size_t R = 0;
  for (auto& pp : parts) R = std::max(R, pp.size());
  std::vector<std::pair<int, int>> desc;
  for (std::size_t k = 0; k < R; ++k) {
    int g = 0, o = 1;
    for (auto& pp : parts)
      if (k < pp.size()) {
        g = add(g, pp[k].first);
        o *= pp[k].second;
      }
    desc.emplace_back(g, o);
  }
  std::reverse(desc.begin(), desc.end());
  return desc;
}

struct SubgroupData {
  AbGroup parent;
  std::vector<int> elems;     // sorted parent indices
  std::vector<int> pos;       // parent index -> position, -1 if absent
  std::vector<int> basis;     // parent indices
  std::vector<int> orders;    // orders of basis elements
  std::vector<int> coords;    // position*rank + i
  std::vector<int> by_coords; // mixed radix over basis orders -> parent index
};

}  // namespace detail

class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup whole(const AbGroup& G) {
    std::vector<int> b;
    for (int i = 0; i < G.rank(); ++i)
      if (G.orders()[i] > 1) b.push_back(G.gen(i));
    return with_basis(G, b);
  }

  // Subgroup generated by gens, with a canonical basis.
  static Subgroup generated(const AbGroup& G, const std::vector<int>& gens) {
    auto elems = closure(G, gens);
    return from_elements(G, std::move(elems));
  }

  static Subgroup from_elements(const AbGroup& G, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    std::vector<int> pos(G.size(), -1);
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
    auto b = detail::abstract_basis(static_cast<int>(elems.size()), [&](int a, int c) {
      return pos[G.add(elems[a], elems[c])];
    });
    std::vector<int> basis;
    for (auto& [id, o] : b) basis.push_back(elems[id]);
    return with_basis(G, basis);
  }

  // Subgroup with a caller-chosen basis; the tuple must be independent.
  static Subgroup with_basis(const AbGroup& G, const std::vector<int>& basis) {
    auto d = std::make_shared<detail::SubgroupData>();
    d->parent = G;
    d->basis = basis;
    long total = 1;
    for (int b : basis) {
      require(b >= 0 && b < G.size(), "bad_element", "generator outside the group");
      d->orders.push_back(G.order_of(b));
      total *= d->orders.back();
      require(total <= kGroupCap, "group_too_large", "subgroup exceeds 4096 elements");
    }
    const int r = static_cast<int>(basis.size());
    d->by_coords.assign(total, 0);
    d->pos.assign(G.size(), -1);
    std::vector<int> c(r, 0);
    for (long t = 0; t < total; ++t) {
      long rem = t;
      int e = 0;
      for (int i = r - 1; i >= 0; --i) {
        c[i] = static_cast<int>(rem % d->orders[i]);
        rem /= d->orders[i];
        e = G.add(e, G.times(basis[i], c[i]));
      }
      require(d->pos[e] < 0, "dependent_generators", "generator tuple is not independent");
      d->pos[e] = 0;
      d->by_coords[t] = e;
    }
    for (int e = 0; e < G.size(); ++e)
      if (d->pos[e] == 0) d->elems.push_back(e);
    for (std::size_t i = 0; i < d->elems.size(); ++i) d->pos[d->elems[i]] = static_cast<int>(i);
    d->coords.assign(d->elems.size() * r, 0);
    for (long t = 0; t < total; ++t) {
      long rem = t;
      const int p = d->pos[d->by_coords[t]];
      for (int i = r - 1; i >= 0; --i) {
        d->coords[static_cast<std::size_t>(p) * r + i] = static_cast<int>(rem % d->orders[i]);
        rem /= d->orders[i];
      }
    }
    return Subgroup(std::move(d));
  }

  static std::vector<int> closure(const AbGroup& G, const std::vector<int>& gens) {
    std::vector<char> in(G.size(), 0);
    std::vector<int> elems{0};
    in[0] = 1;
    for (int g : gens) {
      require(g >= 0 && g < G.size(), "bad_element", "generator outside the group");
      if (in[g]) continue;
      const std::vector<int> cur = elems;
      for (int y = g; !in[y]; y = G.add(y, g))
        for (int s : cur) {
          const int e = G.add(s, y);
          if (!in[e]) {
            in[e] = 1;
            elems.push_back(e);
          }
        }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  bool valid() const { return d_ != nullptr; }
  const AbGroup& parent() const { return d_->parent; }
  const std::vector<int>& elements() const { return d_->elems; }
  int size() const { return static_cast<int>(d_->elems.size()); }
  bool contains(int e) const { return d_->pos[e] >= 0; }
  int pos(int e) const { return d_->pos[e]; }
  const std::vector<int>& basis() const { return d_->basis; }
  const std::vector<int>& basis_orders() const { return d_->orders; }
  int rank() const { return static_cast<int>(d_->basis.size()); }

  // coordinates of an element with respect to basis()
  const int* coords(int e) const {
    require(contains(e), "not_in_subgroup", "element is not in the subgroup");
    return d_->coords.data() + static_cast<std::size_t>(d_->pos[e]) * d_->basis.size();
  }
  int from_coords(const std::vector<int>& c) const {
    int e = 0;
    for (int i = 0; i < rank(); ++i) e = parent().add(e, parent().times(d_->basis[i], c[i]));
    return e;
  }

  int exponent() const {
    long o = 1;
    for (int d : d_->orders) o = std::lcm(o, static_cast<long>(d));
    return static_cast<int>(o);
  }

  std::vector<int> invariant_factors() const {
    auto b = detail::abstract_basis(size(), [&](int a, int c) {
      return d_->pos[parent().add(d_->elems[a], d_->elems[c])];
    });
    std::vector<int> out;
    for (auto& pr : b) out.push_back(pr.second);
    return out;
  }

  bool is_subset_of(const Subgroup& o) const {
    for (int e : elements())
      if (!o.contains(e)) return false;
    return true;
  }

  // {x in this : N x = 0}
  Subgroup torsion(long N) const {
    std::vector<int> el;
    for (int e : elements())
      if (parent().times(e, N) == 0) el.push_back(e);
    return from_elements(parent(), el);
  }

  // same elements (the chosen bases may differ)
  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent() == b.parent() && a.elements() == b.elements();
  }
  friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }

 private:
  explicit Subgroup(std::shared_ptr<const detail::SubgroupData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::SubgroupData> d_;
};

// K is isomorphic to A x A for some A.
inline bool is_hyperbolic(const Subgroup& K) {
  auto f = K.invariant_factors();
  if (f.size() % 2) return false;
  for (std::size_t i = 0; i < f.size(); i += 2)
    if (f[i] != f[i + 1]) return false;
  return true;
}

// All subgroups of G, sorted by (order, element set).
inline std::vector<Subgroup> enumerate_subgroups(const AbGroup& G) {
  require(G.size() <= kEnumCap, "group_too_large", "subgroup enumeration needs |G| <= 256");
  std::map<std::vector<int>, char> seen;
  std::vector<std::vector<int>> todo{{0}};
  seen[{0}] = 1;
  for (std::size_t i = 0; i < todo.size(); ++i) {
    std::vector<char> in(G.size(), 0);
    for (int e : todo[i]) in[e] = 1;
    for (int g = 0; g < G.size(); ++g) {
      if (in[g]) continue;
      auto gens = todo[i];
      gens.push_back(g);
      auto el = Subgroup::closure(G, gens);
      if (seen.emplace(el, 1).second) todo.push_back(std::move(el));
    }
  }
  std::sort(todo.begin(), todo.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Subgroup> out;
  for (auto& el : todo) out.push_back(Subgroup::from_elements(G, el));
  return out;
}

struct Coset {
  Subgroup K;
  int rep = 0;  // least element of the coset

  std::vector<int> elements() const {
    std::vector<int> v;
    for (int k : K.elements()) v.push_back(K.parent().add(rep, k));
    std::sort(v.begin(), v.end());
    return v;
  }
  bool contains(int g) const { return K.contains(K.parent().sub(g, rep)); }
  friend bool operator==(const Coset& a, const Coset& b) { return a.K == b.K && a.rep == b.rep; }
};

inline Coset make_coset(const Subgroup& K, int g) {
  int best = g;
  for (int k : K.elements()) best = std::min(best, K.parent().add(g, k));
  return Coset{K, best};
}

// Order of the class of g in (ambient)/K.
inline int order_mod(const Subgroup& K, int g) {
  int k = 1;
  for (int y = g; !K.contains(y); y = K.parent().add(y, g)) ++k;
  return k;
}

// Cosets of K in T whose class generates T/K (T/K must be cyclic for any to exist).
inline std::vector<Coset> generating_cosets(const Subgroup& T, const Subgroup& K) {
  const int idx = T.size() / K.size();
  std::vector<Coset> out;
  for (int t : T.elements()) {
    Coset c = make_coset(K, t);
    if (c.rep != t) continue;
    if (order_mod(K, t) == idx) out.push_back(c);
  }
  return out;
}

// T/H in invariant-factor form with projection and least-element section.
struct Quotient {
  Subgroup T;
  Subgroup H;
  AbGroup Q;
  std::vector<int> proj;     // parent index (in T) -> Q index; -1 outside T
  std::vector<int> section;  // Q index -> least element of the coset
};

inline Quotient quotient(const Subgroup& T, const Subgroup& H) {
  require(H.is_subset_of(T), "not_subgroup", "quotient needs H inside T");
  const AbGroup& G = T.parent();
  std::vector<int> rep_of(G.size(), -1);
  std::vector<int> reps;
  for (int t : T.elements()) {
    if (rep_of[t] >= 0) continue;
    const int id = static_cast<int>(reps.size());
    reps.push_back(t);
    for (int h : H.elements()) rep_of[G.add(t, h)] = id;
  }
  auto b = detail::abstract_basis(static_cast<int>(reps.size()), [&](int a, int c) {
    return rep_of[G.add(reps[a], reps[c])];
  });
  std::vector<int> orders;
  for (auto& pr : b) orders.push_back(pr.second);
  Quotient out{T, H, AbGroup(orders), std::vector<int>(G.size(), -1), {}};
  std::vector<int> id_to_q(reps.size(), -1);
  for (int qi = 0; qi < out.Q.size(); ++qi) {
    auto c = out.Q.tuple(qi);
    int g = 0;
    for (std::size_t i = 0; i < b.size(); ++i) g = G.add(g, G.times(reps[b[i].first], c[i]));
    id_to_q[rep_of[g]] = qi;
  }
  out.section.assign(out.Q.size(), 0);
  for (int t : T.elements()) out.proj[t] = id_to_q[rep_of[t]];
  for (std::size_t id = 0; id < reps.size(); ++id) out.section[id_to_q[id]] = reps[id];
  return out;
}

// Homomorphism from a subgroup into F^x, given by values on the basis.
class Character {
 public:
  Character() = default;
  Character(Subgroup dom, Field F, std::vector<Log> gen_values)
      : dom_(std::move(dom)), F_(std::move(F)), v_(std::move(gen_values)) {
    require(static_cast<int>(v_.size()) == dom_.rank(), "bad_character", "one value per generator expected");
    for (int i = 0; i < dom_.rank(); ++i) {
      require(v_[i] >= 0, "bad_character", "character values must be nonzero");
      require(F_.pow(v_[i], dom_.basis_orders()[i]) == 0, "bad_character",
              "character value order does not divide the generator order");
    }
  }
  static Character trivial(const Subgroup& dom, const Field& F) {
    return Character(dom, F, std::vector<Log>(dom.rank(), 0));
  }

  const Subgroup& domain() const { return dom_; }
  const Field& field() const { return F_; }
  const std::vector<Log>& gen_values() const { return v_; }

  Log operator()(int e) const {
    const int* c = dom_.coords(e);
    long long s = 0;
    for (int i = 0; i < dom_.rank(); ++i) s += static_cast<long long>(c[i]) * v_[i];
    return static_cast<Log>(s % (F_.q() - 1));
  }
  friend bool operator==(const Character& a, const Character& b) {
    if (a.dom_ != b.dom_ || a.F_ != b.F_) return false;
    for (int e : a.dom_.elements())
      if (a(e) != b(e)) return false;
    return true;
  }

 private:
  Subgroup dom_;
  Field F_;
  std::vector<Log> v_;
};

// All characters of dom into F^x, in lexicographic order of generator dlogs.
inline std::vector<Character> enumerate_characters(const Subgroup& dom, const Field& F) {
  const int N = F.q() - 1;
  std::vector<std::vector<Log>> choices;
  for (int o : dom.basis_orders()) {
    const int g = std::gcd(o, N);
    std::vector<Log> c;
    for (int k = 0; k < g; ++k) c.push_back(static_cast<Log>(k * (N / g)));
    choices.push_back(c);
  }
  std::vector<Character> out;
  std::vector<Log> cur(choices.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == choices.size()) {
      out.emplace_back(dom, F, cur);
      return;
    }
    for (Log v : choices[i]) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// Bimultiplicative map dom x dom -> F^x, given on basis pairs.
class Bicharacter {
 public:
  Bicharacter() = default;
  Bicharacter(Subgroup dom, Field F, std::vector<std::vector<Log>> m)
      : dom_(std::move(dom)), F_(std::move(F)), m_(std::move(m)) {
    const int r = dom_.rank();
    require(static_cast<int>(m_.size()) == r, "bad_bicharacter", "matrix size must equal the generator count");
    for (int i = 0; i < r; ++i) {
      require(static_cast<int>(m_[i].size()) == r, "bad_bicharacter", "matrix must be square");
      for (int j = 0; j < r; ++j) {
        require(m_[i][j] >= 0, "bad_bicharacter", "values must be nonzero");
        require(F_.pow(m_[i][j], dom_.basis_orders()[i]) == 0 && F_.pow(m_[i][j], dom_.basis_orders()[j]) == 0,
                "bad_bicharacter", "value order incompatible with generator orders");
      }
    }
  }

  const Subgroup& domain() const { return dom_; }
  const Field& field() const { return F_; }
  const std::vector<std::vector<Log>>& matrix() const { return m_; }

  Log operator()(int x, int y) const {
    const int* a = dom_.coords(x);
    const int* b = dom_.coords(y);
    long long s = 0;
    const int r = dom_.rank();
    for (int i = 0; i < r; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < r; ++j) s += static_cast<long long>(a[i]) * b[j] % (F_.q() - 1) * m_[i][j];
    }
    return static_cast<Log>(s % (F_.q() - 1));
  }

  bool is_alternating() const {
    for (int x : dom_.elements())
      if ((*this)(x, x) != 0) return false;
    return true;
  }

  // {x : β(x, y) = 1 for all y}
  Subgroup radical() const {
    std::vector<int> el;
    for (int x : dom_.elements()) {
      bool in = true;
      for (int y : dom_.basis()) in = in && (*this)(x, y) == 0;
      if (in) el.push_back(x);
    }
    return Subgroup::from_elements(dom_.parent(), el);
  }
  bool is_nondegenerate() const { return radical().size() == 1; }

  // ψ∘β for ψ = Frobenius^j of the value field
  Bicharacter frobenius(long j) const {
    auto m = m_;
    for (auto& row : m)
      for (auto& v : row) v = F_.frob(v, j);
    return Bicharacter(dom_, F_, m);
  }

  friend bool operator==(const Bicharacter& a, const Bicharacter& b) {
    return a.dom_ == b.dom_ && a.F_ == b.F_ && a.m_ == b.m_;
  }

 private:
  Subgroup dom_;
  Field F_;
  std::vector<std::vector<Log>> m_;
};

// All nondegenerate alternating bicharacters on K with values in F^x, in
// lexicographic order of the upper-triangular dlog entries.
inline std::vector<Bicharacter> enumerate_nondegenerate_alternating(const Subgroup& K, const Field& F) {
  const int r = K.rank();
  const int N = F.q() - 1;
  std::vector<std::pair<int, int>> slots;
  std::vector<std::vector<Log>> choices;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const int g = std::gcd(std::gcd(K.basis_orders()[i], K.basis_orders()[j]), N);
      std::vector<Log> c;
      for (int k = 0; k < g; ++k) c.push_back(static_cast<Log>(k * (N / g)));
      slots.emplace_back(i, j);
      choices.push_back(c);
    }
  std::vector<Bicharacter> out;
  std::vector<std::vector<Log>> m(r, std::vector<Log>(r, 0));
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (s == slots.size()) {
      Bicharacter b(K, F, m);
      if (b.is_nondegenerate()) out.push_back(b);
      return;
    }
    auto [i, j] = slots[s];
    for (Log v : choices[s]) {
      m[i][j] = v;
      m[j][i] = static_cast<Log>((N - v) % N);
      rec(s + 1);
    }
  };
  rec(0);
  return out;
}

// Greedy symplectic basis (a_1, b_1, ..., a_r, b_r) of a nondegenerate
// alternating bicharacter: maximal-order pivots, β(a_i, b_i) of that order,
// remaining pairs in the orthogonal complement.
inline std::vector<int> symplectic_basis(const Bicharacter& beta) {
  require(beta.is_alternating() && beta.is_nondegenerate(), "degenerate_bicharacter",
          "symplectic basis needs a nondegenerate alternating bicharacter");
  const AbGroup& G = beta.domain().parent();
  const Field& F = beta.field();
  std::vector<int> cur = beta.domain().elements();
  std::vector<int> out;
  while (cur.size() > 1) {
    int a = -1, best = 0;
    for (int x : cur)
      if (G.order_of(x) > best) {
        best = G.order_of(x);
        a = x;
      }
    int b = -1;
    for (int y : cur)
      if (F.order(beta(a, y)) == best) {
        b = y;
        break;
      }
    ensure(b >= 0, "no symplectic partner found");
    out.push_back(a);
    out.push_back(b);
    std::vector<int> next;
    for (int x : cur)
      if (beta(a, x) == 0 && beta(b, x) == 0) next.push_back(x);
    cur = std::move(next);
  }
  return out;
}

// Orbit representatives of bicharacters under Aut(F) = <Frobenius>: the
// lexicographically least dlog matrix of each orbit, in list order.
inline std::vector<Bicharacter> bichar_orbit_reps(const std::vector<Bicharacter>& list) {
  std::vector<Bicharacter> out;
  for (const auto& b : list) {
    auto least = b.matrix();
    for (int j = 1; j < b.field().m(); ++j) least = std::min(least, b.frobenius(j).matrix());
    if (least == b.matrix()) out.push_back(b);
  }
  return out;
}

}  // namespace gdalg

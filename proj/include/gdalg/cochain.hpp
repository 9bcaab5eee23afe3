/**
 * @file cochain.hpp
 * @brief Low-degree cochains: crossed 1-cocycles into L^x and 2-cocycles
 * with trivial action.
 */
#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "abgroup.hpp"
#include "gf.hpp"

namespace gdalg {

// G acting on L = GF(p^(en)) through θ: G -> Z/n with kernel K; g acts as
// Frobenius^(e θ(g)) and the coset C is sent to 1.
struct ActionSpec {
  Tower tower;
  Subgroup G;
  Subgroup K;
  Coset C;
  std::vector<int> theta;  // by position in G

  static ActionSpec create(const Tower& tower, const Subgroup& G, const Coset& C) {
    const Subgroup& K = C.K;
    require(K.is_subset_of(G) && G.contains(C.rep), "bad_action", "coset must lie in G");
    require(G.size() / K.size() == tower.degree(), "bad_action", "[G:K] must equal [L:F]");
    require(order_mod(K, C.rep) == tower.degree(), "bad_action", "coset does not generate G/K");
    ActionSpec s{tower, G, K, C, std::vector<int>(G.size(), 0)};
    const AbGroup& A = G.parent();
    for (int g : G.elements()) {
      int j = 0;
      while (!K.contains(A.sub(g, A.times(C.rep, j)))) ++j;
      s.theta[G.pos(g)] = j;
    }
    return s;
  }

  const Field& F() const { return tower.base(); }
  const Field& L() const { return tower.top(); }
  int n() const { return tower.degree(); }
  int t0() const { return C.rep; }
  int theta_of(int g) const { return theta[G.pos(g)]; }
  Log act(int g, Log l) const { return tower.frobenius(static_cast<long>(F().m()) * theta_of(g), l); }
};

// Map G -> L^x satisfying f(g1 g2) = f(g1) σ_{g1}(f(g2)).
struct Cocycle1 {
  ActionSpec spec;
  std::vector<Log> v;  // by position in G

  Log operator()(int g) const { return v[spec.G.pos(g)]; }

  bool is_cocycle() const {
    const Field& L = spec.L();
    const AbGroup& A = spec.G.parent();
    for (int a : spec.G.elements())
      for (int b : spec.G.elements())
        if ((*this)(A.add(a, b)) != L.mul((*this)(a), spec.act(a, (*this)(b)))) return false;
    return true;
  }
  friend bool operator==(const Cocycle1& x, const Cocycle1& y) { return x.v == y.v; }
};

inline Cocycle1 coboundary1(const ActionSpec& spec, Log l) {
  require(l >= 0, "division_by_zero", "coboundary of zero");
  Cocycle1 f{spec, std::vector<Log>(spec.G.size())};
  for (int g : spec.G.elements()) f.v[spec.G.pos(g)] = spec.L().div(spec.act(g, l), l);
  return f;
}

// The element of Z^1(G, L^x) restricting to λ on K with f(t0) = μ0. Without
// μ0 the rule μ0 = ω_L^j, λ(t0^n) = ω_F^j with 0 <= j < |F^x| is used.
inline Cocycle1 extend_character(const ActionSpec& spec, const Character& lambda,
                                 std::optional<Log> mu0 = std::nullopt) {
  require(lambda.domain() == spec.K && lambda.field() == spec.F(), "bad_character",
          "character must be defined on K with values in F");
  const AbGroup& A = spec.G.parent();
  const Field& L = spec.L();
  const int n = spec.n();
  const Log j = lambda(A.times(spec.t0(), n));
  Log m0 = j;
  if (mu0) {
    require(*mu0 >= 0 && spec.tower.norm(*mu0) == j, "norm_mismatch", "N(mu0) must equal lambda(t0^n)");
    m0 = *mu0;
  }
  std::vector<Log> P(n);
  P[0] = 0;
  for (int i = 1; i < n; ++i) P[i] = L.mul(P[i - 1], spec.tower.frobenius(static_cast<long>(spec.F().m()) * (i - 1), m0));
  Cocycle1 f{spec, std::vector<Log>(spec.G.size())};
  for (int g : spec.G.elements()) {
    const int i = spec.theta_of(g);
    const int k = A.sub(g, A.times(spec.t0(), i));
    f.v[spec.G.pos(g)] = L.mul(spec.tower.embed(lambda(k)), P[i]);
  }
  ensure(f.is_cocycle(), "extension is not a cocycle");
  return f;
}

// Restriction of a cocycle to K, a character of K into F^x.
inline Character restriction(const Cocycle1& f) {
  std::vector<Log> vals;
  for (int a : f.spec.K.basis()) {
    const Log x = f(a);
    require(f.spec.tower.in_base(x), "not_in_base", "restriction takes values outside F");
    vals.push_back(f.spec.tower.to_base(x));
  }
  return Character(f.spec.K, f.spec.F(), vals);
}

struct H1Result {
  long z1 = 0;
  long b1 = 0;
  std::vector<Cocycle1> reps;
  long size() const { return static_cast<long>(reps.size()); }
};

// H^1(G, L^x) by brute force: cocycles from free choices on the generators
// of G, classes modulo coboundaries.
inline H1Result h1(const ActionSpec& spec) {
  const Subgroup& G = spec.G;
  const AbGroup& A = G.parent();
  const Field& L = spec.L();
  const int r = G.rank();
  // per generator: values v with f(o a) = 1 along the cyclic chain
  std::vector<std::vector<Log>> cand(r);
  for (int i = 0; i < r; ++i) {
    const int a = G.basis()[i];
    for (Log v = 0; v < L.q() - 1; ++v) {
      Log acc = 0;
      int x = 0;
      for (int t = 0; t < G.basis_orders()[i]; ++t) {
        acc = L.mul(acc, spec.act(x, v));
        x = A.add(x, a);
      }
      if (acc == 0) cand[i].push_back(v);
    }
  }
  std::set<std::vector<Log>> z1;
  std::vector<Log> choice(r);
  std::function<void(int)> rec = [&](int i) {
    if (i == r) {
      Cocycle1 f{spec, std::vector<Log>(G.size(), kZero)};
      f.v[G.pos(0)] = 0;
      // fill along x = prev + a_k, k the last nonzero coordinate of x
      std::vector<char> done(G.size(), 0);
      done[G.pos(0)] = 1;
      bool progress = true;
      while (progress) {
        progress = false;
        for (int x : G.elements()) {
          if (done[G.pos(x)]) continue;
          const int* c = G.coords(x);
          int k = r - 1;
          while (c[k] == 0) --k;
          const int prev = A.sub(x, G.basis()[k]);
          if (!done[G.pos(prev)]) continue;
          f.v[G.pos(x)] = L.mul(f(prev), spec.act(prev, choice[k]));
          done[G.pos(x)] = 1;
          progress = true;
        }
      }
      if (f.is_cocycle()) z1.insert(f.v);
      return;
    }
    for (Log v : cand[i]) {
      choice[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::set<std::vector<Log>> b1;
  for (Log l = 0; l < L.q() - 1; ++l) b1.insert(coboundary1(spec, l).v);
  H1Result out;
  out.z1 = static_cast<long>(z1.size());
  out.b1 = static_cast<long>(b1.size());
  std::set<std::vector<Log>> seen;
  for (const auto& v : z1) {
    if (seen.count(v)) continue;
    out.reps.push_back(Cocycle1{spec, v});
    for (const auto& b : b1) {
      std::vector<Log> w(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) w[i] = L.mul(v[i], b[i]);
      seen.insert(w);
    }
  }
  return out;
}

// 2-cochain dom x dom -> F^x (trivial action).
struct Cocycle2 {
  Subgroup dom;
  Field F;
  std::vector<Log> t;  // pos(x) * |dom| + pos(y)

  template <class Fn>
  static Cocycle2 from_function(const Subgroup& dom, const Field& F, Fn fn) {
    Cocycle2 c{dom, F, std::vector<Log>(static_cast<std::size_t>(dom.size()) * dom.size())};
    for (int x : dom.elements())
      for (int y : dom.elements()) c.t[static_cast<std::size_t>(dom.pos(x)) * dom.size() + dom.pos(y)] = fn(x, y);
    return c;
  }

  Log operator()(int x, int y) const { return t[static_cast<std::size_t>(dom.pos(x)) * dom.size() + dom.pos(y)]; }

  bool is_cocycle() const {
    const AbGroup& A = dom.parent();
    for (int x : dom.elements())
      for (int y : dom.elements()) {
        if ((*this)(x, y) < 0) return false;
        for (int z : dom.elements())
          if (F.mul((*this)(x, y), (*this)(A.add(x, y), z)) != F.mul((*this)(y, z), (*this)(x, A.add(y, z))))
            return false;
      }
    return true;
  }
  bool is_symmetric() const {
    for (int x : dom.elements())
      for (int y : dom.elements())
        if ((*this)(x, y) != (*this)(y, x)) return false;
    return true;
  }
  Cocycle2 ratio(const Cocycle2& o) const {
    require(o.dom == dom && o.F == F, "bad_cochain", "cochains on different domains");
    Cocycle2 r = *this;
    for (std::size_t i = 0; i < t.size(); ++i) r.t[i] = F.div(t[i], o.t[i]);
    return r;
  }
};

// β(x, y) = τ(x, y) / τ(y, x)
inline Bicharacter alt(const Cocycle2& tau) {
  const auto& b = tau.dom.basis();
  std::vector<std::vector<Log>> m(b.size(), std::vector<Log>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m[i][j] = tau.F.div(tau(b[i], b[j]), tau(b[j], b[i]));
  return Bicharacter(tau.dom, tau.F, m);
}

// τ(a_i, a_j) = β(a_i, a_j) for i < j and 1 otherwise, extended bimultiplicatively.
inline Cocycle2 upper_triangular_cocycle(const Bicharacter& beta) {
  const Subgroup& K = beta.domain();
  const auto& m = beta.matrix();
  const long N = beta.field().q() - 1;
  return Cocycle2::from_function(K, beta.field(), [&](int x, int y) {
    const int* a = K.coords(x);
    const int* b = K.coords(y);
    long long s = 0;
    for (int i = 0; i < K.rank(); ++i)
      for (int j = i + 1; j < K.rank(); ++j) s += static_cast<long long>(a[i]) * b[j] % N * m[i][j];
    return static_cast<Log>(s % N);
  });
}

// f_{k1} f_{k2} = d(τ(k1, k2)) f_{k1 k2} pointwise on G.
inline bool check_compat(const ActionSpec& spec, const std::vector<Cocycle1>& f, const Cocycle2& tau) {
  const Subgroup& K = tau.dom;
  const AbGroup& A = K.parent();
  const Field& L = spec.L();
  for (int x : K.elements())
    for (int y : K.elements()) {
      const Log t = tau(x, y);
      const Cocycle1& fx = f[K.pos(x)];
      const Cocycle1& fy = f[K.pos(y)];
      const Cocycle1& fxy = f[K.pos(A.add(x, y))];
      for (int g : spec.G.elements())
        if (L.mul(fx(g), fy(g)) != L.mul(L.div(spec.act(g, t), t), fxy(g))) return false;
    }
  return true;
}

// ρ = δc for some c: dom -> F^x. Solutions differ by characters, so each
// generator value is pinned down to one root of its cyclic-chain equation.
inline bool is_coboundary(const Cocycle2& rho) {
  const Subgroup& K = rho.dom;
  const AbGroup& A = K.parent();
  const Field& F = rho.F;
  const long N = F.q() - 1;
  std::vector<Log> c(K.size(), kZero);
  c[K.pos(0)] = rho(0, 0);
  std::vector<Log> gv(K.rank());
  for (int i = 0; i < K.rank(); ++i) {
    const int a = K.basis()[i];
    const int o = K.basis_orders()[i];
    Log R = 0;
    int x = 0;
    for (int j = 0; j < o; ++j) {
      R = F.mul(R, rho(x, a));
      x = A.add(x, a);
    }
    const long g = std::gcd(static_cast<long>(o), N);
    if (R % g) return false;
    // least y with o*y = R mod N
    Log y = kZero;
    for (long cand = 0; cand < N; ++cand)
      if ((cand * o - R) % N == 0) {
        y = static_cast<Log>(cand);
        break;
      }
    gv[i] = y;
  }
  std::vector<char> done(K.size(), 0);
  done[K.pos(0)] = 1;
  for (bool progress = true; progress;) {
    progress = false;
    for (int x : K.elements()) {
      if (done[K.pos(x)]) continue;
      const int* cc = K.coords(x);
      int k = K.rank() - 1;
      while (cc[k] == 0) --k;
      const int prev = A.sub(x, K.basis()[k]);
      if (!done[K.pos(prev)]) continue;
      c[K.pos(x)] = F.div(F.mul(c[K.pos(prev)], gv[k]), rho(prev, K.basis()[k]));
      done[K.pos(x)] = 1;
      progress = true;
    }
  }
  for (int x : K.elements())
    for (int y : K.elements())
      if (rho(x, y) != F.div(F.mul(c[K.pos(x)], c[K.pos(y)]), c[K.pos(A.add(x, y))])) return false;
  return true;
}

// A character of G into the roots of unity of the algebraic closure of F,
// extending a character χ of a subgroup S with values in F^x. Values are
// exponents u mod E standing for ω_E^u, E the p'-part of exp(G) times |F^x|,
// with the compatible convention ω_{EN}^E = ω_N.
struct CharacterLift {
  Field F;
  Subgroup dom;
  long E = 1;
  std::vector<long> values;  // by position in dom
  long operator()(int g) const { return values[dom.pos(g)]; }
};

// The lexicographically first extension of chi (generator values ascending).
inline CharacterLift lift_character(const Subgroup& G, const Character& chi) {
  const Field& F = chi.field();
  require(chi.domain().is_subset_of(G), "bad_character", "character must live on a subgroup of G");
  const long N = F.q() - 1;
  long e = G.exponent();
  while (e % F.p() == 0) e /= F.p();
  const long E = std::lcm(e, N);
  std::vector<std::vector<long>> choices;
  for (int o : G.basis_orders()) {
    const long g = std::gcd(static_cast<long>(o), E);
    std::vector<long> c;
    for (long t = 0; t < g; ++t) c.push_back(t * (E / g));
    choices.push_back(c);
  }
  std::vector<long> cur(G.rank());
  std::optional<CharacterLift> found;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (found) return;
    if (i == choices.size()) {
      CharacterLift lift{F, G, E, std::vector<long>(G.size())};
      for (int g : G.elements()) {
        const int* c = G.coords(g);
        long long s = 0;
        for (int t = 0; t < G.rank(); ++t) s += static_cast<long long>(c[t]) * cur[t];
        lift.values[G.pos(g)] = static_cast<long>(s % E);
      }
      for (int s : chi.domain().elements())
        if (lift(s) != chi(s) * (E / N)) return;
      found = lift;
      return;
    }
    for (long v : choices[i]) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  ensure(found.has_value(), "character has no extension");
  return *found;
}

// γ(g1, g2) = χ̃(g1)^[1/N] χ̃(g2)^[1/N] / χ̃(g1 g2)^[1/N], N = |F^x|. With
// χ̃(g) = ω_E^u, 0 <= u < E, the root is ω_{EN}^u, so γ = ω_N^((u1 + u2 - u12)/E).
inline Cocycle2 gamma_from_lift(const CharacterLift& lift) {
  const AbGroup& A = lift.dom.parent();
  return Cocycle2::from_function(lift.dom, lift.F, [&](int x, int y) {
    return static_cast<Log>((lift(x) + lift(y) - lift(A.add(x, y))) / lift.E);
  });
}

inline Cocycle2 gamma_from_character(const Subgroup& G, const Character& chi) {
  return gamma_from_lift(lift_character(G, chi));
}

// η(k1, k2) = s(χ(k1)) s(χ(k2)) / s(χ(k1 k2)) where χ: K -> M^x/F^x is given by
// canonical coset representatives (least dlog in the coset).
inline Cocycle2 eta_from_character(const Subgroup& K, const Tower& tw, const std::vector<Log>& values) {
  require(static_cast<int>(values.size()) == K.size(), "bad_character", "one value per element of K expected");
  const AbGroup& A = K.parent();
  for (Log v : values)
    require(v >= 0 && v < tw.index(), "not_canonical", "representative is not the canonical one");
  auto val = [&](int k) { return values[K.pos(k)]; };
  for (int x : K.elements())
    for (int y : K.elements())
      require(tw.in_base(tw.top().div(tw.top().mul(val(x), val(y)), val(A.add(x, y)))), "not_homomorphism",
              "values do not define a homomorphism into M^x/F^x");
  return Cocycle2::from_function(K, tw.base(), [&](int x, int y) {
    return tw.to_base(tw.top().div(tw.top().mul(val(x), val(y)), val(A.add(x, y))));
  });
}

// α(x1, x2) = λ(s(x1) + s(x2) - s(x1 + x2)) on T/K with the least-element section.
inline std::pair<Cocycle2, Quotient> connecting_alpha(const Subgroup& T, const Character& lambda) {
  const Subgroup& K = lambda.domain();
  Quotient Q = quotient(T, K);
  Subgroup dom = Subgroup::whole(Q.Q);
  const AbGroup& A = T.parent();
  auto c = Cocycle2::from_function(dom, lambda.field(), [&](int x, int y) {
    const int s = A.sub(A.add(Q.section[x], Q.section[y]), Q.section[Q.Q.add(x, y)]);
    return lambda(s);
  });
  return {c, Q};
}

}  // namespace gdalg

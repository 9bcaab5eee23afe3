/**
 * @file classify.hpp
 * @brief Classification over finite fields: simple G-Galois extensions by
 * (K, C, β, s) and graded-division algebras by (T, H, C, β̄, χ), with
 * explicit representatives.
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "cochain.hpp"
#include "galois.hpp"

namespace gdalg {

inline constexpr int kGaloisEnumCap = 64;
inline constexpr int kGdrGroupCap = 32;
inline constexpr int kGdrDimCap = 256;

struct GaloisParams {
  Field F;
  AbGroup G;
  Subgroup K;
  Coset C;
  Bicharacter beta;
  std::vector<int> s;

  int n() const { return G.size() / K.size(); }
  int t0() const { return C.rep; }
};

// exponent j with β(t0^n, k) = ω_F^j, 0 <= j < |F^x|
inline long jCb(const Coset& C, const Bicharacter& beta, int n, int k) {
  return j_cb(beta, C.rep, n, k);
}

inline void validate(const GaloisParams& p) {
  const Subgroup W = Subgroup::whole(p.G);
  require(p.K.parent() == p.G, "bad_params", "K must be a subgroup of G");
  require(p.C.K == p.K && make_coset(p.K, p.C.rep).rep == p.C.rep, "bad_params", "C must be a coset of K");
  require(order_mod(p.K, p.C.rep) == p.n(), "not_generating", "C must generate G/K");
  require(is_hyperbolic(p.K), "not_hyperbolic", "K must be of the form A x A");
  require(p.F.units() % p.K.exponent() == 0, "no_roots_of_unity", "exp(K) must divide |F^x|");
  require(p.beta.domain() == p.K && p.beta.field() == p.F, "bad_params", "β must live on K with values in F");
  require(p.beta.is_alternating() && p.beta.is_nondegenerate(), "degenerate_bicharacter",
          "β must be nondegenerate alternating");
  require(static_cast<int>(p.s.size()) == p.K.rank(), "bad_params", "one s_i per generator of K");
  for (int i = 0; i < p.K.rank(); ++i)
    require(p.s[i] >= 0 && p.s[i] < p.K.basis_orders()[i], "bad_params", "s_i out of range");
}

namespace detail {

// first monic irreducible of degree n in lexicographic order (constant term first)
inline Poly first_irreducible(const Field& F, int n) {
  for (long idx = 0;; ++idx) {
    Poly f(n + 1, kZero);
    f[n] = 0;
    long r = idx;
    for (int i = 0; i < n; ++i) {
      f[i] = F.from_code(static_cast<int>(r % F.q()));
      r /= F.q();
    }
    if (f[0] >= 0 && poly::is_irreducible(F, f)) return f;
  }
}

// F[x]/(f) with G cyclic generated by t0 acting as x -> x^q. Used when
// K = 1 and the top field exceeds the table cap.
inline GAlgebra cyclic_field_model(const Field& F, const Subgroup& G, int t0, int n) {
  const Poly f = first_irreducible(F, n);
  auto xpow = [&](int k) {
    Poly r = poly::powmod(F, poly::x(), static_cast<long long>(k), f);
    Vec v(n, kZero);
    for (std::size_t i = 0; i < r.size(); ++i) v[i] = r[i];
    return v;
  };
  std::vector<Vec> basis_pow;
  for (int k = 0; k < 2 * n - 1; ++k) basis_pow.push_back(xpow(k));
  Vec unit = la::unit_vec(n, 0);
  Algebra A = Algebra::from_products(F, n, [&](int i, int j) { return basis_pow[i + j]; }, unit, false);
  const Poly xq = poly::powmod(F, poly::x(), F.q(), f);
  Matrix M(n, n);
  Poly cur{0};
  for (int j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < cur.size(); ++i) M(static_cast<int>(i), j) = cur[i];
    cur = poly::mulmod(F, cur, xq, f);
  }
  const AbGroup& Ab = G.parent();
  std::vector<Matrix> gm;
  for (int b : G.basis()) {
    int c = 0;
    while (Ab.times(t0, c) != b) ++c;
    Matrix P = Matrix::identity(n);
    for (int t = 0; t < c; ++t) P = la::mul(F, P, M);
    gm.push_back(std::move(P));
  }
  return GAlgebra::create(std::move(A), G, gm, true);
}

}  // namespace detail

// The algebra L<X_1..X_m | X_i X_j = β_ij X_j X_i, X_i^{o_i} = μ_i> with
// g·X_i = f_{a_i}(g) X_i, μ_i = ω_L^{o_i j_i / |F^x|} ω_F^{e_i}. Any integers
// e_i are accepted; classes depend on e_i mod o_i only.
inline GAlgebra galois_model(const Field& F, const Subgroup& G, const Coset& C, const Bicharacter& beta,
                             const std::vector<long>& e) {
  const Subgroup& K = C.K;
  const int n = G.size() / K.size();
  if (K.size() == 1 && detail::ipow(F.q(), n) > kFieldCap) return detail::cyclic_field_model(F, G, C.rep, n);
  const Tower tw = Tower::create(F, n);
  const Field& L = tw.top();
  const ActionSpec spec = ActionSpec::create(tw, G, C);
  const int m = K.rank();
  const long N = F.units();
  std::vector<Log> mu(m);
  std::vector<Cocycle1> f;
  for (int i = 0; i < m; ++i) {
    const int o = K.basis_orders()[i];
    const long j = j_cb(beta, C.rep, n, K.basis()[i]);
    ensure(o * j % N == 0, "j_cb not divisible");
    mu[i] = L.mul(L.pow(1, o * j / N), tw.embed(static_cast<Log>(((e[i] % N) + N) % N)));
    std::vector<Log> vals;
    for (int b : K.basis()) vals.push_back(beta(b, K.basis()[i]));
    f.push_back(extend_character(spec, Character(K, F, vals)));
  }
  const auto& bm = beta.matrix();
  const Cocycle2 tau = Cocycle2::from_function(K, L, [&](int x, int y) {
    const int* a = K.coords(x);
    const int* b = K.coords(y);
    long long s = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < i; ++j) s += static_cast<long long>(a[i]) * b[j] % N * bm[i][j];
    Log v = tw.embed(static_cast<Log>(s % N));
    for (int i = 0; i < m; ++i)
      if (a[i] + b[i] >= K.basis_orders()[i]) v = L.mul(v, mu[i]);
    return v;
  });
  GradedAlgebra tga = twisted_group_algebra(tw, tau);
  const int d = tga.alg.dim();
  std::vector<Matrix> gm;
  for (int g : G.basis()) {
    Matrix M(d, d);
    for (int k : K.elements()) {
      const int* c = K.coords(k);
      Log ck = 0;
      for (int i = 0; i < m; ++i) ck = L.mul(ck, L.pow(f[i](g), c[i]));
      for (int r = 0; r < n; ++r) {
        const Log* img = tw.coords(L.mul(spec.act(g, static_cast<Log>(r)), ck));
        for (int t = 0; t < n; ++t) M(K.pos(k) * n + t, K.pos(k) * n + r) = img[t];
      }
    }
    gm.push_back(std::move(M));
  }
  return GAlgebra::create(std::move(tga.alg), G, gm, d <= 32);
}

// C(s_1, ..., s_m)
inline GAlgebra construct_simple_galois(const GaloisParams& p) {
  validate(p);
  std::vector<long> e(p.s.begin(), p.s.end());
  return galois_model(p.F, Subgroup::whole(p.G), p.C, p.beta, e);
}

// One entry per isomorphism class: K hyperbolic with exp(K) | |F^x| and G/K
// cyclic, C generating, all nondegenerate alternating β, all s.
inline std::vector<GaloisParams> enumerate_simple_galois(const Field& F, const AbGroup& G) {
  require(G.size() <= kGaloisEnumCap, "group_too_large", "enumeration needs |G| <= 64");
  const Subgroup W = Subgroup::whole(G);
  std::vector<GaloisParams> out;
  for (const Subgroup& K : enumerate_subgroups(G)) {
    if (!is_hyperbolic(K) || F.units() % K.exponent() != 0) continue;
    for (const Coset& C : generating_cosets(W, K))
      for (const Bicharacter& beta : enumerate_nondegenerate_alternating(K, F)) {
        const auto& ord = K.basis_orders();
        std::vector<int> s(K.rank(), 0);
        while (true) {
          out.push_back(GaloisParams{F, G, K, C, beta, s});
          int i = K.rank() - 1;
          while (i >= 0 && ++s[i] == ord[i]) s[i--] = 0;
          if (i < 0) break;
        }
      }
  }
  return out;
}

// ------------------------------------------------ graded-division algebras

struct GdrParams {
  Field F;
  AbGroup G;
  Subgroup T, H, K;
  Coset C;           // coset of K in T generating T/K
  Bicharacter beta;  // on K/H inside quotient(T, H).Q
  Character chi;     // on K_[|F^x|]

  int n() const { return T.size() / K.size(); }
  long dim() const { return static_cast<long>(T.size()) * n(); }
};

struct GdrFrame {
  Quotient Q;
  Subgroup Kbar;
  Coset Cbar;
};

inline GdrFrame gdr_frame(const Subgroup& T, const Subgroup& H, const Subgroup& K, const Coset& C) {
  Quotient Q = quotient(T, H);
  std::vector<int> el;
  for (int k : K.elements()) el.push_back(Q.proj[k]);
  Subgroup Kbar = Subgroup::from_elements(Q.Q, el);
  Coset Cbar = make_coset(Kbar, Q.proj[C.rep]);
  return GdrFrame{std::move(Q), Kbar, Cbar};
}

inline void validate(const GdrParams& p) {
  require(p.T.parent() == p.G && p.H.is_subset_of(p.K) && p.K.is_subset_of(p.T), "bad_params",
          "need H <= K <= T <= G");
  require(p.C.K == p.K && p.T.contains(p.C.rep) && order_mod(p.K, p.C.rep) == p.n(), "not_generating",
          "C must be a coset of K generating T/K");
  require(p.dim() <= kGdrDimCap, "dim_too_large", "dimension exceeds 256");
  require(p.chi.domain() == p.K.torsion(p.F.units()) && p.chi.field() == p.F, "bad_params",
          "χ must be a character of K_[|F^x|]");
}

// Cbar the T/H-algebra C(0,...,0) built on K/H; Dbar = E(Cbar^op # F(T/H))E;
// the result is the loop algebra twisted by γ_χ̃.
inline GradedAlgebra construct_gdr(const GdrParams& p, unsigned long long seed = 0) {
  validate(p);
  GdrFrame fr = gdr_frame(p.T, p.H, p.K, p.C);
  require(p.beta.domain() == fr.Kbar && p.beta.field() == p.F, "bad_params", "β̄ must live on K/H");
  GaloisParams gp{p.F, fr.Q.Q, fr.Kbar, fr.Cbar, p.beta, std::vector<int>(fr.Kbar.rank(), 0)};
  GAlgebra Cbar = construct_simple_galois(gp);
  GAlgebra Cop = opposite(Cbar);
  GradedAlgebra S = smash_group(Cop);
  const Vec e0 = split_primitive_idempotent(Cop.alg, seed);
  Vec E(S.alg.dim(), kZero);
  const int d = Cop.alg.dim();
  for (int i = 0; i < d; ++i) E[Cop.grp.pos(0) * d + i] = e0[i];
  GradedAlgebra Dbar = corner(E, S).alg;
  const Cocycle2 gamma = gamma_from_character(p.T, p.chi);
  return loop_twisted(Dbar, fr.Q, gamma);
}

inline std::vector<GdrParams> enumerate_gdr(const Field& F, const AbGroup& G, long dim_cap = kGdrDimCap) {
  require(G.size() <= kGdrGroupCap, "group_too_large", "graded-division enumeration needs |G| <= 32");
  require(dim_cap <= kGdrDimCap, "dim_too_large", "dimension cap must be <= 256");
  const auto subs = enumerate_subgroups(G);
  const long N = F.units();
  std::vector<GdrParams> out;
  for (const Subgroup& T : subs)
    for (const Subgroup& K : subs) {
      if (!K.is_subset_of(T)) continue;
      const int n = T.size() / K.size();
      if (static_cast<long>(T.size()) * n > dim_cap) continue;
      const auto cosets = generating_cosets(T, K);
      if (cosets.empty()) continue;
      const Subgroup KN = K.torsion(N);
      const auto chis = enumerate_characters(KN, F);
      for (const Subgroup& H : subs) {
        if (!H.is_subset_of(K)) continue;
        for (const Coset& C : cosets) {
          GdrFrame fr = gdr_frame(T, H, K, C);
          if (!is_hyperbolic(fr.Kbar) || N % fr.Kbar.exponent() != 0) continue;
          for (const Bicharacter& b : enumerate_nondegenerate_alternating(fr.Kbar, F))
            for (const Character& chi : chis) out.push_back(GdrParams{F, G, T, H, K, C, b, chi});
        }
      }
    }
  return out;
}

// F0 = GF(p^e0), the subfield generated by the exp(K/H)-th roots of unity.
inline int base_subfield_degree(const Field& F, int exp_kbar) {
  for (int e0 = 1; e0 <= F.m(); ++e0)
    if (F.m() % e0 == 0 && (detail::ipow(F.p(), e0) - 1) % exp_kbar == 0) return e0;
  throw InternalError("no subfield contains the roots of unity");
}

inline Character frobenius(const Character& chi, long j) {
  std::vector<Log> v;
  for (int b : chi.domain().basis()) v.push_back(chi.field().frob(chi(b), j));
  return Character(chi.domain(), chi.field(), v);
}

inline std::vector<Log> character_values(const Character& chi) {
  std::vector<Log> v;
  for (int b : chi.domain().basis()) v.push_back(chi(b));
  return v;
}

struct GdrClass {
  GdrParams rep;                 // least χ of its orbit
  std::vector<Character> orbit;  // all χ' = ψ∘χ, ψ in Gal(F/F0)
  int e0 = 1;
};

// One class per graded-ring isomorphism type: β̄ restricted to Aut(F)-orbit
// representatives, χ merged along Gal(F/F0).
inline std::vector<GdrClass> gdr_iso_classes(const Field& F, const AbGroup& G, long dim_cap = kGdrDimCap) {
  std::vector<GdrClass> out;
  for (const auto& p : enumerate_gdr(F, G, dim_cap)) {
    // β̄ must be the representative of its Aut(F)-orbit
    if (bichar_orbit_reps({p.beta}).empty()) continue;
    const int e0 = base_subfield_degree(F, p.beta.domain().exponent());
    std::vector<Character> orbit{p.chi};
    auto least = character_values(p.chi);
    for (long j = e0; j < F.m(); j += e0) {
      Character c = frobenius(p.chi, j);
      least = std::min(least, character_values(c));
      bool seen = false;
      for (const auto& o : orbit) seen = seen || character_values(o) == character_values(c);
      if (!seen) orbit.push_back(c);
    }
    if (least != character_values(p.chi)) continue;
    out.push_back(GdrClass{p, orbit, e0});
  }
  return out;
}

// Isomorphism invariants of a graded-division algebra D, read off D itself:
// support T, center support H, graded centrality, [D_e:F], the kernel K and
// the coset C of the conjugation action of T on the field D_e (t acting as
// z -> z^(q^θ(t)), K = {θ = 0}, C = {θ = 1}), and for each h in H the class
// of z_h^o(h) in F^x / (F^x)^gcd(o(h), |F^x|), z_h spanning Z(D) ∩ D_h.
struct GdrInvariant {
  std::vector<int> support;
  std::vector<int> center_support;
  bool graded_central = false;
  int de_dim = 0;
  std::vector<int> kernel;
  std::vector<int> frob_coset;
  std::vector<int> central_classes;

  friend bool operator==(const GdrInvariant&, const GdrInvariant&) = default;
};

inline GdrInvariant gdr_invariant(const GradedAlgebra& D, unsigned long long seed = 0) {
  require(is_graded_division(D), "not_graded_division", "invariant needs a graded-division algebra");
  const Field& F = D.alg.field();
  const Algebra& A = D.alg;
  GdrInvariant out;
  out.support = D.support();
  auto project = [&](const Vec& v, int g) {
    Vec w(A.dim(), kZero);
    for (int i : D.component(g)) w[i] = v[i];
    return w;
  };
  const auto Z = center(A);
  std::vector<Vec> ze;
  for (int g : out.support) {
    std::vector<Vec> zg;
    for (const Vec& z : Z)
      if (Vec w = project(z, g); !la::is_zero(w)) zg.push_back(std::move(w));
    if (zg.empty()) continue;
    out.center_support.push_back(g);
    if (g == 0) ze = zg;
    const Vec& zh = zg[0];
    const int o = D.grp.order_of(g);
    auto c = proportional(F, A.power(zh, o), A.unit());
    ensure(c.has_value(), "central power is not a scalar");
    out.central_classes.push_back(static_cast<int>(*c % std::gcd(o, F.units())));
  }
  out.graded_central = la::span_basis(F, A.dim(), ze).size() == 1;
  std::vector<Vec> b0;
  for (int i : D.component(0)) b0.push_back(A.basis(i));
  const FieldInAlgebra De = field_in_algebra(A, b0, A.unit(), seed);
  out.de_dim = De.n;
  for (int t : out.support) {
    const Vec u = A.basis(D.component(t)[0]);
    const Vec conj = A.mul(A.mul(u, De.z), *A.inverse(u));
    Vec zp = De.z;
    int theta = -1;
    for (int j = 0; j < De.n && theta < 0; ++j) {
      if (zp == conj) theta = j;
      zp = A.power(zp, F.q());
    }
    ensure(theta >= 0, "conjugation is not a power of Frobenius");
    if (theta == 0) out.kernel.push_back(t);
    if (theta == 1 % De.n) out.frob_coset.push_back(t);
  }
  return out;
}

// Θ: C -> C^{ψ^-1}, ψ = Frobenius^e0, with ψ∘β = β: ℓ X^c ↦ ℓ ⋆ X'^c where
// X'_i = ω_L^{-|F0^x| j_i / |F^x|} ω_F^{-s_i (p^e0 - 1) / o_i} ⋆ X_i and
// ℓ ⋆ x = ψ^-1(ℓ) x. The ω_F factor absorbs ψ moving ω_F^{s_i}; it is an
// integral power because o_i divides |F0^x|. The matrix is in the bases of C
// and of pull_scalars(C, -e0).
inline Matrix frobenius_rescaling(const GaloisParams& p, int e0) {
  validate(p);
  require(p.F.m() % e0 == 0, "bad_subfield", "e0 must divide the degree of F");
  require(p.beta.frobenius(e0) == p.beta, "not_fixed", "ψ∘β must equal β");
  const Field& F = p.F;
  const Subgroup& K = p.K;
  const int n = p.n();
  const Tower tw = Tower::create(F, n);
  const Field& L = tw.top();
  const long N = F.units();
  const long N0 = detail::ipow(F.p(), e0) - 1;
  std::vector<long> c(K.rank());
  for (int i = 0; i < K.rank(); ++i) {
    const long j = jCb(p.C, p.beta, n, K.basis()[i]);
    ensure(N0 * j % N == 0, "rescaling exponent not integral");
    c[i] = N0 * j / N;
    const int o = K.basis_orders()[i];
    ensure(N0 % o == 0, "generator order does not divide |F0^x|");
    c[i] += static_cast<long>(p.s[i]) * (N0 / o) % N * tw.index();
  }
  const int d = K.size() * n;
  Matrix M(d, d);
  for (int k : K.elements()) {
    const int* kc = K.coords(k);
    long shift = 0;
    for (int i = 0; i < K.rank(); ++i) shift -= c[i] * kc[i];
    for (int r = 0; r < n; ++r) {
      const Log ell = L.frob(L.pow(1, r + shift), -static_cast<long>(e0));
      const Log* co = tw.coords(ell);
      for (int t = 0; t < n; ++t) M(K.pos(k) * n + t, K.pos(k) * n + r) = F.frob(co[t], e0);
    }
  }
  return M;
}

}  // namespace gdalg

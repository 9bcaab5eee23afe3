/**
 * @file galois.hpp
 * @brief G-Galois extensions: the direct definition, the practical
 * criterion, the intrinsic grading, induction, the complete invariant and
 * executable versions of the structure theorems.
 */
#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "cochain.hpp"

namespace gdalg {

// ---------------------------------------------------------------- helpers

inline Vec flatten(const Matrix& M) { return M.a; }

inline bool is_identity(const Matrix& M) { return M == Matrix::identity(M.rows); }

// Some invertible element of the span, or nullopt. Exhaustive when the span
// has at most 2^16 elements, otherwise a seeded random search.
inline std::optional<Vec> find_invertible(const Algebra& A, const std::vector<Vec>& span, unsigned long long seed = 0) {
  const Field& F = A.field();
  if (span.empty()) return std::nullopt;
  for (const Vec& v : span)
    if (A.is_invertible(v)) return v;
  for (std::size_t i = 0; i < span.size(); ++i)
    for (std::size_t j = i + 1; j < span.size(); ++j) {
      Vec v = la::add(F, span[i], span[j]);
      if (A.is_invertible(v)) return v;
    }
  const int k = static_cast<int>(span.size());
  double total = 1;
  for (int i = 0; i < k; ++i) total *= F.q();
  if (total <= 65536) {
    std::vector<int> c(k, 0);
    for (long t = 1; t < static_cast<long>(total); ++t) {
      long rem = t;
      Vec v(A.dim(), kZero);
      for (int i = 0; i < k; ++i) {
        const Log coef = F.from_code(static_cast<int>(rem % F.q()));
        rem /= F.q();
        la::axpy(F, coef, span[i], v);
      }
      if (A.is_invertible(v)) return v;
    }
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-1, F.q() - 2);
  for (int r = 0; r < 512; ++r) {
    Vec v(A.dim(), kZero);
    for (const Vec& b : span) la::axpy(F, static_cast<Log>(dist(rng)), b, v);
    if (A.is_invertible(v)) return v;
  }
  return std::nullopt;
}

// {a : g a = c(g) a for the listed (g, c)}
inline std::vector<Vec> eigenspace(const GAlgebra& C, const std::vector<std::pair<int, Log>>& eig) {
  const Field& F = C.alg.field();
  const int d = C.alg.dim();
  if (eig.empty()) {
    std::vector<Vec> all;
    for (int i = 0; i < d; ++i) all.push_back(C.alg.basis(i));
    return all;
  }
  Matrix M(static_cast<int>(eig.size()) * d, d);
  for (std::size_t s = 0; s < eig.size(); ++s) {
    const Matrix& G = C.mat(eig[s].first);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        M(static_cast<int>(s) * d + a, b) = a == b ? F.sub(G(a, b), eig[s].second) : G(a, b);
  }
  return la::kernel(F, M);
}

// Scalar c with x = c y, if any.
inline std::optional<Log> proportional(const Field& F, const Vec& x, const Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] >= 0) {
      const Log c = F.div(x[i], y[i]);
      if (la::scale(F, c, y) != x) return std::nullopt;
      return c;
    }
  return std::nullopt;
}

// ------------------------------------------------------- direct definition

// Φ: C # FG -> End_F(C), c g ↦ (x ↦ c (g·x)). Column pos(g)*d + i is the
// row-major flattening of L_{b_i} M_g.
inline Matrix phi_matrix(const GAlgebra& C) {
  const Field& F = C.alg.field();
  const int d = C.alg.dim();
  const Subgroup& G = C.grp;
  Matrix P(d * d, d * G.size());
  std::vector<Matrix> L;
  for (int i = 0; i < d; ++i) L.push_back(C.alg.left_mult(C.alg.basis(i)));
  for (int g : G.elements()) {
    const Matrix& Mg = C.mat(g);
    for (int i = 0; i < d; ++i) {
      const Matrix prod = la::mul(F, L[i], Mg);
      const int col = G.pos(g) * d + i;
      for (int r = 0; r < d * d; ++r) P(r, col) = prod.a[r];
    }
  }
  return P;
}

struct GaloisCertificate {
  int phi_rank = 0;
  int fixed_dim = 0;
  bool faithful = false;
  bool verdict = false;
  std::string reason;  // empty when verdict holds
};

inline GaloisCertificate is_galois_extension(const GAlgebra& C) {
  GaloisCertificate c;
  const int d = C.alg.dim();
  c.fixed_dim = static_cast<int>(fixed_subspace(C).size());
  c.faithful = true;
  for (int g : C.grp.elements())
    if (g != 0 && is_identity(C.mat(g))) c.faithful = false;
  c.phi_rank = la::rank(C.alg.field(), phi_matrix(C));
  const bool bij = c.phi_rank == d * d && C.grp.size() == d;
  if (c.fixed_dim != 1)
    c.reason = "fixed_subalgebra_too_big";
  else if (!c.faithful)
    c.reason = "not_faithful";
  else if (!bij)
    c.reason = "phi_not_bijective";
  c.verdict = c.reason.empty();
  return c;
}

// Elements of G acting trivially on the span.
inline Subgroup action_kernel(const GAlgebra& C, const std::vector<Vec>& span) {
  std::vector<int> el;
  for (int g : C.grp.elements()) {
    bool triv = true;
    for (const Vec& v : span) triv = triv && C.act(g, v) == v;
    if (triv) el.push_back(g);
  }
  return Subgroup::from_elements(C.grp.parent(), el);
}

// The action of Q = grp/K on a G-algebra on which K acts trivially.
inline GAlgebra quotient_action(const GAlgebra& C, const Quotient& Q) {
  Subgroup W = Subgroup::whole(Q.Q);
  std::vector<Matrix> gm;
  for (int b : W.basis()) gm.push_back(C.mat(Q.section[b]));
  return GAlgebra::create(C.alg, W, gm, false);
}

struct CriterionReport {
  bool verdict = false;
  int failed_at = 0;  // 1..4, 0 when all conditions hold
  std::string detail;
};

// (1) dim = |G|; (2) the center is a G/K-Galois extension, K the kernel on
// the center; (3) exp(K) divides q - 1; (4) each K-eigenspace of a character
// into F^x contains an invertible element.
inline CriterionReport galois_criterion(const GAlgebra& C, unsigned long long seed = 0) {
  const Field& F = C.alg.field();
  if (C.alg.dim() != C.grp.size()) return {false, 1, "dimension differs from |G|"};
  auto zb = center(C.alg);
  SubAlgebra Z = subalgebra(C.alg, zb);
  GAlgebra Zg = restrict_action(C, Z);
  Subgroup K = action_kernel(C, zb);
  Quotient Q = quotient(C.grp, K);
  if (!is_galois_extension(quotient_action(Zg, Q)).verdict) return {false, 2, "center is not Galois over G/K"};
  if ((F.q() - 1) % K.exponent() != 0) return {false, 3, "F lacks a primitive exp(K)-th root of unity"};
  for (const Character& chi : enumerate_characters(K, F)) {
    std::vector<std::pair<int, Log>> eig;
    for (int k : K.basis()) eig.emplace_back(k, chi(k));
    if (!find_invertible(C.alg, eigenspace(C, eig), seed)) return {false, 4, "eigenspace without invertible element"};
  }
  return {true, 0, ""};
}

// ------------------------------------------------- Miyashita-Ulbrich grading

// C_h = {a : a b = (h·b) a for all b}
inline std::vector<Vec> mu_component(const GAlgebra& C, int h) {
  const Field& F = C.alg.field();
  const int d = C.alg.dim();
  Matrix M(d * d, d);
  for (int j = 0; j < d; ++j) {
    const Matrix R = C.alg.right_mult(C.alg.basis(j));
    const Matrix L = C.alg.left_mult(C.mat(h).column(j));
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) M(j * d + r, c) = F.sub(R(r, c), L(r, c));
  }
  return la::kernel(F, M);
}

struct MuGrading {
  Subgroup K;
  std::vector<std::vector<Vec>> comps;  // by position in K
  GradedAlgebra graded;                 // C rebased onto the components
  Matrix basis;                         // columns: new basis in old coordinates
};

inline MuGrading mu_grading(const GAlgebra& C, const Subgroup& K) {
  const int d = C.alg.dim();
  MuGrading out{K, std::vector<std::vector<Vec>>(K.size()), {}, {}};
  std::vector<Vec> cols;
  std::vector<int> deg;
  for (int k : K.elements()) {
    out.comps[K.pos(k)] = mu_component(C, k);
    for (const Vec& v : out.comps[K.pos(k)]) {
      cols.push_back(v);
      deg.push_back(k);
    }
  }
  require(static_cast<int>(cols.size()) == d && la::rank(C.alg.field(), la::from_columns(d, cols)) == d,
          "not_simple", "intrinsic grading components do not span the algebra");
  out.basis = la::from_columns(d, cols);
  out.graded = GradedAlgebra::create(rebase(C.alg, out.basis), K.parent(), deg, true);
  return out;
}

// ------------------------------------------------------------- induction

// Ind_T^G(C) = {f : G -> C | f(t + g) = t·f(g)} with (g·f)(h) = f(h + g).
// Basis: f supported on the coset of the j-th least transversal element with
// value b_i there, at index j*d + i.
inline GAlgebra induce(const Subgroup& G, const GAlgebra& C) {
  const Subgroup& T = C.grp;
  require(T.is_subset_of(G), "not_subgroup", "T must be a subgroup of G");
  const AbGroup& A = G.parent();
  const Field& F = C.alg.field();
  const int d = C.alg.dim();
  std::vector<int> reps;
  for (int g : G.elements())
    if (make_coset(T, g).rep == g) reps.push_back(g);
  const int s = static_cast<int>(reps.size());
  const int n = s * d;
  std::vector<std::vector<Term>> tab(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < s; ++j)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (const Term& t : C.alg.product(a, b))
          tab[static_cast<std::size_t>(j * d + a) * n + (j * d + b)].push_back({j * d + t.k, t.c});
  Vec u(n, kZero);
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < d; ++i) u[j * d + i] = C.alg.unit()[i];
  auto rep_index = [&](int g) {
    const int r = make_coset(T, g).rep;
    return static_cast<int>(std::lower_bound(reps.begin(), reps.end(), r) - reps.begin());
  };
  std::vector<Matrix> gm;
  for (int g : G.basis()) {
    Matrix M(n, n);
    // (g·f)(r_j) = f(r_j + g) = t·f(r_j') with r_j + g = t + r_j'
    for (int j = 0; j < s; ++j) {
      const int x = A.add(reps[j], g);
      const int jp = rep_index(x);
      const Matrix& Mt = C.mat(A.sub(x, reps[jp]));
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) M(j * d + r, jp * d + c) = Mt(r, c);
    }
    gm.push_back(std::move(M));
  }
  (void)F;
  return GAlgebra::create(Algebra(C.alg.field(), n, std::move(tab), u, false), G, gm, false);
}

// --------------------------------------------- subfields and identification

// A subalgebra that is a field, with a primitive element z and its powers.
struct FieldInAlgebra {
  int n = 0;
  Vec z;
  std::vector<Vec> zpow;  // z^0 .. z^(n-1), an F-basis
  SpanCoords sc;
  Poly minpoly;
};

inline FieldInAlgebra field_in_algebra(const Algebra& A, const std::vector<Vec>& basis, const Vec& unit,
                                       unsigned long long seed = 0) {
  const Field& F = A.field();
  const int n = static_cast<int>(basis.size());
  std::vector<Vec> cands = basis;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) cands.push_back(la::add(F, basis[i], basis[j]));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-1, F.q() - 2);
  for (int r = 0; r < 256; ++r) {
    Vec v(A.dim(), kZero);
    for (const Vec& b : basis) la::axpy(F, static_cast<Log>(dist(rng)), b, v);
    cands.push_back(v);
  }
  for (const Vec& z : cands) {
    Poly m = minimal_polynomial(A, z, unit);
    if (poly::deg(m) != n || !poly::is_irreducible(F, m)) continue;
    FieldInAlgebra out;
    out.n = n;
    out.z = z;
    out.zpow.push_back(unit);
    for (int k = 1; k < n; ++k) out.zpow.push_back(A.mul(out.zpow.back(), z));
    out.sc = SpanCoords(F, A.dim(), out.zpow);
    out.minpoly = m;
    return out;
  }
  throw ConstraintError("not_a_field", "subalgebra has no primitive element; it is not a field");
}

// Roots in L = tw.top() of a polynomial with coefficients in tw.base().
inline std::vector<Log> roots_in_tower(const Tower& tw, const Poly& f) {
  const Field& L = tw.top();
  Poly g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = tw.embed(f[i]);
  std::vector<Log> out;
  if (poly::eval(L, g, kZero) < 0) out.push_back(kZero);
  for (Log x = 0; x < L.q() - 1; ++x)
    if (poly::eval(L, g, x) < 0) out.push_back(x);
  return out;
}

// Roots of f (coefficients in F, irreducible of degree Z.n) inside the field
// spanned by Z.zpow, computed with the algebra's own arithmetic so no log
// table of the big field is needed. One root by random equal-degree
// splitting, the others as its Frobenius conjugates.
inline std::vector<Vec> roots_in_field(const Algebra& B, const FieldInAlgebra& Z, const Poly& f,
                                       unsigned long long seed = 0) {
  const Field& F = B.field();
  const int n = Z.n;
  if (poly::deg(f) != n) return {};
  using BPoly = std::vector<Vec>;
  auto trim = [](BPoly& a) {
    while (!a.empty() && la::is_zero(a.back())) a.pop_back();
  };
  auto monic = [&](BPoly a) {
    const Vec inv = *B.inverse(a.back());
    for (Vec& c : a) c = B.mul(inv, c);
    return a;
  };
  auto rem = [&](BPoly a, const BPoly& g) {  // g monic
    const int dg = static_cast<int>(g.size()) - 1;
    trim(a);
    while (static_cast<int>(a.size()) - 1 >= dg) {
      const Vec lead = a.back();
      const int shift = static_cast<int>(a.size()) - 1 - dg;
      for (int i = 0; i <= dg; ++i) a[shift + i] = la::sub(F, a[shift + i], B.mul(lead, g[i]));
      trim(a);
    }
    return a;
  };
  auto mulmod = [&](const BPoly& a, const BPoly& b, const BPoly& g) {
    if (a.empty() || b.empty()) return BPoly{};
    BPoly c(a.size() + b.size() - 1, la::zeros(B.dim()));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = la::add(F, c[i + j], B.mul(a[i], b[j]));
    return rem(std::move(c), g);
  };
  auto gcd = [&](BPoly a, BPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
      BPoly r = rem(a, monic(b));
      a = std::move(b);
      b = std::move(r);
    }
    return a.empty() ? a : monic(a);
  };
  BPoly g;
  for (Log c : f) g.push_back(B.scalar(c));
  g = monic(g);
  unsigned long long Q = 1;
  for (int i = 0; i < n; ++i) Q *= static_cast<unsigned long long>(F.q());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-1, F.q() - 2);
  for (int attempt = 0; g.size() > 2; ++attempt) {
    ensure(attempt < 4096, "root splitting did not terminate");
    Vec delta = la::zeros(B.dim());
    for (const Vec& zp : Z.zpow) la::axpy(F, static_cast<Log>(dist(rng)), zp, delta);
    BPoly h;
    if (F.p() == 2) {
      // trace of δx: Σ (δx)^(2^i), 0 <= i < log2 Q
      BPoly t{la::zeros(B.dim()), delta};
      t = rem(t, g);
      h = t;
      for (unsigned long long e = 2; e < Q; e *= 2) {
        t = mulmod(t, t, g);
        BPoly s(std::max(h.size(), t.size()), la::zeros(B.dim()));
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i < h.size()) s[i] = la::add(F, s[i], h[i]);
          if (i < t.size()) s[i] = la::add(F, s[i], t[i]);
        }
        h = std::move(s);
        trim(h);
      }
    } else {
      // (x + δ)^((Q-1)/2) - 1
      BPoly base = rem(BPoly{delta, B.unit()}, g);
      h = BPoly{B.unit()};
      for (unsigned long long e = (Q - 1) / 2; e; e >>= 1) {
        if (e & 1) h = mulmod(h, base, g);
        base = mulmod(base, base, g);
      }
      if (h.empty()) h.push_back(la::zeros(B.dim()));
      h[0] = la::sub(F, h[0], B.unit());
      trim(h);
    }
    BPoly d = gcd(g, h);
    if (d.size() < 2 || d.size() == g.size()) continue;
    // keep the smaller factor
    if (2 * (d.size() - 1) > g.size() - 1) {
      BPoly q;  // g / d by long division
      BPoly a = g;
      const int dd = static_cast<int>(d.size()) - 1;
      q.assign(a.size() - dd, la::zeros(B.dim()));
      for (int k = static_cast<int>(a.size()) - 1; k >= dd; --k) {
        const Vec c = a[k];
        q[k - dd] = c;
        for (int i = 0; i <= dd; ++i) a[k - dd + i] = la::sub(F, a[k - dd + i], B.mul(c, d[i]));
      }
      d = monic(q);
    }
    g = std::move(d);
  }
  std::vector<Vec> out{la::scale(F, F.neg(0), g[0])};
  for (int j = 1; j < n; ++j) out.push_back(B.power(out.back(), static_cast<unsigned long long>(F.q())));
  return out;
}

// Isomorphism between the canonical L and a field inside an algebra,
// sending the root rho of the minimal polynomial to z.
struct FieldIdent {
  Tower tw;
  const FieldInAlgebra* fz = nullptr;
  Log rho = 0;
  Matrix to_z;  // L coordinates -> z-power coordinates
  const Algebra* A = nullptr;

  FieldIdent(const Tower& t, const FieldInAlgebra& f, Log r, const Algebra& alg) : tw(t), fz(&f), rho(r), A(&alg) {
    const int n = f.n;
    Matrix R(n, n);
    for (int a = 0; a < n; ++a) {
      const Log* c = tw.coords(tw.top().pow(rho, a));
      for (int i = 0; i < n; ++i) R(i, a) = c[i];
    }
    auto inv = la::inverse(tw.base(), R);
    ensure(inv.has_value(), "root is not primitive");
    to_z = *inv;
  }

  Vec to_alg(Log l) const {
    const int n = fz->n;
    Vec c(tw.coords(l), tw.coords(l) + n);
    const Vec zc = la::apply(tw.base(), to_z, c);
    Vec v(A->dim(), kZero);
    for (int a = 0; a < n; ++a) la::axpy(tw.base(), zc[a], fz->zpow[a], v);
    return v;
  }
  Log from_alg(const Vec& x) const {
    const Vec zc = fz->sc.coords_or_throw(x);
    const Field& L = tw.top();
    Log acc = kZero;
    for (int a = 0; a < fz->n; ++a) acc = L.add(acc, L.mul(tw.embed(zc[a]), L.pow(rho, a)));
    return acc;
  }
};

// --------------------------------------------------------- the invariant

// β(t0^n, k) = ω_F^j with 0 <= j < |F^x|
inline Log j_cb(const Bicharacter& beta, int t0, int n, int k) {
  return beta(beta.domain().parent().times(t0, n), k);
}

struct PsiInvariant {
  int n = 0;                              // [Z(C) : F]
  std::vector<int> theta;                 // θ on the basis of G, g acting as φ^(e θ(g))
  Subgroup K;                             // kernel of θ
  std::vector<std::vector<Log>> beta;     // on the basis of K (dlogs in F)
  std::vector<int> s;                     // 0 <= s_i < o(a_i)

  friend bool operator==(const PsiInvariant& a, const PsiInvariant& b) {
    return a.n == b.n && a.theta == b.theta && a.K == b.K && a.beta == b.beta && a.s == b.s;
  }
};

// θ(g) on the basis of G: g acts on the center as z -> z^(q^θ(g)).
inline std::vector<int> center_theta(const GAlgebra& C, const FieldInAlgebra& Z) {
  const Field& F = C.alg.field();
  std::vector<Vec> frob{Z.z};
  for (int j = 1; j < Z.n; ++j) frob.push_back(C.alg.power(frob.back(), static_cast<unsigned long long>(F.q())));
  std::vector<int> out;
  for (int g : C.grp.basis()) {
    const Vec gz = C.act(g, Z.z);
    int found = -1;
    for (int j = 0; j < Z.n && found < 0; ++j)
      if (frob[j] == gz) found = j;
    require(found >= 0, "not_galois", "group does not act on the center by field automorphisms");
    out.push_back(found);
  }
  return out;
}

inline int theta_of(const Subgroup& G, const std::vector<int>& theta_gens, int n, int g) {
  const int* c = G.coords(g);
  long s = 0;
  for (int i = 0; i < G.rank(); ++i) s += static_cast<long>(c[i]) * theta_gens[i];
  return static_cast<int>(s % n);
}

// Ψ(C) for a simple G-Galois extension. Kb fixes the basis of K (default:
// the canonical basis of the kernel); root_choice selects which root of the
// minimal polynomial identifies the center with the canonical field.
inline PsiInvariant psi_invariant(const GAlgebra& C, std::optional<Subgroup> Kb = std::nullopt, int root_choice = 0,
                                  unsigned long long seed = 0) {
  const Field& F = C.alg.field();
  const Algebra& A = C.alg;
  const Subgroup& G = C.grp;
  const AbGroup& Ab = G.parent();
  auto zb = center(A);
  FieldInAlgebra Z = field_in_algebra(A, zb, A.unit(), seed);
  PsiInvariant out;
  out.n = Z.n;
  out.theta = center_theta(C, Z);
  std::vector<int> kel;
  int t1 = -1;
  for (int g : G.elements()) {
    const int th = theta_of(G, out.theta, Z.n, g);
    if (th == 0) kel.push_back(g);
    if (th == 1 % Z.n && t1 < 0) t1 = g;
  }
  Subgroup K = Subgroup::from_elements(Ab, kel);
  require(K.size() * Z.n == G.size(), "not_galois", "θ is not onto Z/n");
  if (Kb) {
    require(*Kb == K, "bad_subgroup", "supplied K differs from the kernel on the center");
    K = *Kb;
  }
  out.K = K;
  if (K.size() == 1) return out;

  const Coset C0 = make_coset(K, t1);
  const Tower tw = Tower::create(F, Z.n);
  const auto roots = roots_in_tower(tw, Z.minpoly);
  ensure(static_cast<int>(roots.size()) == Z.n, "minimal polynomial does not split in L");
  const FieldIdent iota(tw, Z, roots[static_cast<std::size_t>(root_choice) % roots.size()], A);
  const ActionSpec spec = ActionSpec::create(tw, G, C0);
  const int m = K.rank();
  std::vector<Vec> Y;
  for (int a : K.basis()) {
    auto comp = mu_component(C, a);
    require(static_cast<int>(comp.size()) == Z.n, "not_simple", "intrinsic component has the wrong dimension");
    Y.push_back(comp[0]);
  }
  out.beta.assign(m, std::vector<Log>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto c = proportional(F, A.mul(Y[i], Y[j]), A.mul(Y[j], Y[i]));
      require(c.has_value(), "not_simple", "generators do not commute up to a scalar");
      out.beta[i][j] = *c;
    }
  const Bicharacter beta(K, F, out.beta);
  const int t0 = C0.rep;
  const long N = F.q() - 1;
  for (int i = 0; i < m; ++i) {
    std::vector<Log> vals;
    for (int b : K.basis()) vals.push_back(beta(b, K.basis()[i]));
    const Cocycle1 f = extend_character(spec, Character(K, F, vals));
    // l in Z with t0·l = r l, r = ι(f(t0)) c^-1 where t0·Y = c Y
    const Vec sY = C.act(t0, Y[i]);
    auto sYi = A.inverse(sY);
    require(sYi.has_value(), "not_simple", "homogeneous generator is not invertible");
    const Vec r = A.mul(iota.to_alg(f(t0)), A.mul(Y[i], *sYi));
    Matrix M(A.dim(), Z.n);
    for (int a = 0; a < Z.n; ++a) M.set_column(a, la::sub(F, C.act(t0, Z.zpow[a]), A.mul(r, Z.zpow[a])));
    auto ker = la::kernel(F, M);
    ensure(!ker.empty(), "no normalizing scalar");
    Vec l(A.dim(), kZero);
    for (int a = 0; a < Z.n; ++a) la::axpy(F, ker[0][a], Z.zpow[a], l);
    const Vec X = A.mul(l, Y[i]);
    for (int g : G.basis())
      ensure(C.act(g, X) == A.mul(iota.to_alg(f(g)), X), "normalized generator is not equivariant");
    const int o = K.basis_orders()[i];
    const Log mu = iota.from_alg(A.power(X, static_cast<unsigned long long>(o)));
    const long j = j_cb(beta, t0, Z.n, K.basis()[i]);
    ensure(o * j % N == 0, "j_cb not divisible");
    const Log base = tw.top().pow(0 + 1, o * j / N);  // ω_L^(o j / N)
    const Log ratio = tw.top().div(mu, base);
    ensure(tw.in_base(ratio), "normalized power outside F");
    out.s.push_back(static_cast<int>(tw.to_base(ratio) % o));
  }
  return out;
}

// M (columns: images of the basis of C in the basis of D) is an isomorphism
// of G-algebras.
inline bool is_galgebra_isomorphism(const GAlgebra& C, const GAlgebra& D, const Matrix& M) {
  const Field& F = C.alg.field();
  const int d = C.alg.dim();
  if (C.grp != D.grp || D.alg.dim() != d || M.rows != d || M.cols != d || la::rank(F, M) != d) return false;
  if (la::apply(F, M, C.alg.unit()) != D.alg.unit()) return false;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (la::apply(F, M, C.alg.basis_mul(i, j)) != D.alg.mul(M.column(i), M.column(j))) return false;
  for (int g : C.grp.basis())
    if (la::mul(F, M, C.mat(g)) != la::mul(F, D.mat(g), M)) return false;
  return true;
}

// ------------------------------------------------------ isomorphism oracle

// An algebra spanned by z^a u^c, z primitive in a coefficient field and u_i
// invertible generators with u_i^{o_i} and u_i z u_i^-1 in that field.
struct CrossedShape {
  FieldInAlgebra coef;
  std::vector<Vec> gens;
  std::vector<int> orders;
  std::vector<std::vector<int>> exps;  // exponent tuple of each monomial block
  SpanCoords mono;
  std::vector<Vec> gpow;   // u_i^{o_i}, z-power coordinates
  std::vector<Vec> gconj;  // u_i z u_i^-1, z-power coordinates
};

inline CrossedShape crossed_shape(const Algebra& A, FieldInAlgebra coef, std::vector<Vec> gens, std::vector<int> orders) {
  const Field& F = A.field();
  CrossedShape S;
  S.coef = std::move(coef);
  S.gens = std::move(gens);
  S.orders = std::move(orders);
  const int m = static_cast<int>(S.gens.size());
  long blocks = 1;
  for (int o : S.orders) blocks *= o;
  std::vector<Vec> mono;
  for (long t = 0; t < blocks; ++t) {
    std::vector<int> c(m);
    long rem = t;
    for (int i = m - 1; i >= 0; --i) {
      c[i] = static_cast<int>(rem % S.orders[i]);
      rem /= S.orders[i];
    }
    Vec u = A.unit();
    for (int i = 0; i < m; ++i) u = A.mul(u, A.power(S.gens[i], static_cast<unsigned long long>(c[i])));
    for (const Vec& zp : S.coef.zpow) mono.push_back(A.mul(zp, u));
    S.exps.push_back(c);
  }
  require(static_cast<int>(mono.size()) == A.dim(), "bad_shape", "monomials do not match the dimension");
  S.mono = SpanCoords(F, A.dim(), mono);
  for (int i = 0; i < m; ++i) {
    S.gpow.push_back(S.coef.sc.coords_or_throw(A.power(S.gens[i], static_cast<unsigned long long>(S.orders[i]))));
    auto inv = A.inverse(S.gens[i]);
    require(inv.has_value(), "bad_shape", "generator is not invertible");
    S.gconj.push_back(S.coef.sc.coords_or_throw(A.mul(A.mul(S.gens[i], S.coef.z), *inv)));
  }
  return S;
}

struct OracleHooks {
  // extra test on a candidate image of generator i, given ψ on the field
  std::function<bool(int, const Vec&, const std::function<Vec(const Vec&)>&)> prefilter;
  // extra test on a complete candidate (matrix in native coordinates)
  std::function<bool(const Matrix&)> accept;
};

// Exhaustive search for an algebra isomorphism A -> B with ψ(z) a root of
// the minimal polynomial of z in B's coefficient field and ψ(u_i) in
// Bcoef·targets[i]. Returns the matrix of ψ.
inline std::optional<Matrix> crossed_iso_search(const Algebra& A, const CrossedShape& S, const Algebra& B,
                                                const FieldInAlgebra& Bcoef, const std::vector<Vec>& targets,
                                                const OracleHooks& hooks = {}) {
  const Field& F = A.field();
  if (A.dim() != B.dim() || S.coef.n != Bcoef.n || B.field() != F) return std::nullopt;
  const int n = S.coef.n;
  const int m = static_cast<int>(S.gens.size());
  const int d = A.dim();
  // native basis vector -> monomial coordinates
  Matrix Minv(d, d);
  for (int j = 0; j < d; ++j) Minv.set_column(j, S.mono.coords_or_throw(A.basis(j)));
  // all nonzero elements of B's field
  std::vector<Vec> units;
  if (m > 0) {
    const long total = static_cast<long>(std::pow(F.q(), n) + 0.5);
    for (long t = 1; t < total; ++t) {
      long rem = t;
      Vec v(d, kZero);
      for (int a = 0; a < n; ++a) {
        la::axpy(F, F.from_code(static_cast<int>(rem % F.q())), Bcoef.zpow[a], v);
        rem /= F.q();
      }
      units.push_back(std::move(v));
    }
  }
  for (const Vec& r : roots_in_field(B, Bcoef, S.coef.minpoly)) {
    std::vector<Vec> rpow{B.unit()};
    for (int a = 1; a < n; ++a) rpow.push_back(B.mul(rpow.back(), r));
    auto psi_coef = [&](const Vec& zc) {
      Vec v(d, kZero);
      for (int a = 0; a < n; ++a) la::axpy(F, zc[a], rpow[a], v);
      return v;
    };
    auto psi_field = [&](const Vec& x) { return psi_coef(S.coef.sc.coords_or_throw(x)); };
    std::vector<std::vector<Vec>> cand(m);
    bool dead = false;
    for (int i = 0; i < m && !dead; ++i) {
      const Vec want_pow = psi_coef(S.gpow[i]);
      const Vec want_conj = psi_coef(S.gconj[i]);
      for (const Vec& l : units) {
        const Vec im = B.mul(l, targets[i]);
        if (B.power(im, static_cast<unsigned long long>(S.orders[i])) != want_pow) continue;
        if (B.mul(im, r) != B.mul(want_conj, im)) continue;
        if (hooks.prefilter && !hooks.prefilter(i, im, psi_field)) continue;
        cand[i].push_back(im);
      }
      dead = cand[i].empty();
    }
    if (dead) continue;
    std::vector<std::size_t> pick(m, 0);
    while (true) {
      // images of the monomials
      Matrix P(d, d);
      int col = 0;
      for (const auto& c : S.exps) {
        Vec u = B.unit();
        for (int i = 0; i < m; ++i) u = B.mul(u, B.power(cand[i][pick[i]], static_cast<unsigned long long>(c[i])));
        for (int a = 0; a < n; ++a) P.set_column(col++, B.mul(rpow[a], u));
      }
      const Matrix Psi = la::mul(F, P, Minv);
      bool ok = la::rank(F, Psi) == d;
      for (int i = 0; ok && i < d; ++i)
        for (int j = 0; ok && j < d; ++j)
          ok = la::apply(F, Psi, A.basis_mul(i, j)) == B.mul(Psi.column(i), Psi.column(j));
      if (ok && hooks.accept) ok = hooks.accept(Psi);
      if (ok) return Psi;
      int i = 0;
      while (i < m && ++pick[i] == cand[i].size()) pick[i++] = 0;
      if (i == m) break;
    }
  }
  return std::nullopt;
}

// Search for an isomorphism of G-algebras between two simple Galois
// extensions, independent of the invariant: field part by roots, generators
// by scalar multiples inside matching K-eigenspaces.
inline bool galois_iso_oracle(const GAlgebra& C, const GAlgebra& D, unsigned long long seed = 0) {
  if (C.grp != D.grp || C.alg.dim() != D.alg.dim() || C.alg.field() != D.alg.field()) return false;
  const Field& F = C.alg.field();
  const Algebra& A = C.alg;
  const Algebra& B = D.alg;
  auto za = center(A), zb = center(B);
  if (za.size() != zb.size()) return false;
  FieldInAlgebra Za = field_in_algebra(A, za, A.unit(), seed);
  FieldInAlgebra Zb = field_in_algebra(B, zb, B.unit(), seed);
  Subgroup K = action_kernel(C, za);
  if (K != action_kernel(D, zb)) return false;
  std::vector<Vec> gens, targets;
  std::vector<int> orders;
  for (int i = 0; i < K.rank(); ++i) {
    const int a = K.basis()[i];
    auto comp = mu_component(C, a);
    if (static_cast<int>(comp.size()) != Za.n) return false;
    gens.push_back(comp[0]);
    orders.push_back(K.basis_orders()[i]);
    std::vector<std::pair<int, Log>> eig;
    for (int k : K.basis()) {
      auto c = proportional(F, C.act(k, comp[0]), comp[0]);
      ensure(c.has_value(), "component is not a K-eigenspace");
      eig.emplace_back(k, *c);
    }
    auto sp = eigenspace(D, eig);
    if (static_cast<int>(sp.size()) != Zb.n) return false;
    auto w = find_invertible(B, sp, seed);
    if (!w) return false;
    targets.push_back(*w);
  }
  CrossedShape S = crossed_shape(A, Za, gens, orders);
  // σ_g(u_i) u_i^-1 lies in the center
  std::vector<std::vector<Vec>> cg(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int g : C.grp.basis()) cg[i].push_back(A.mul(C.act(g, gens[i]), *A.inverse(gens[i])));
  OracleHooks hooks;
  hooks.prefilter = [&](int i, const Vec& im, const std::function<Vec(const Vec&)>& psi) {
    for (std::size_t t = 0; t < C.grp.basis().size(); ++t)
      if (D.act(C.grp.basis()[t], im) != B.mul(psi(cg[i][t]), im)) return false;
    return true;
  };
  hooks.accept = [&](const Matrix& Psi) {
    for (int g : C.grp.basis())
      if (la::mul(F, Psi, C.mat(g)) != la::mul(F, D.mat(g), Psi)) return false;
    return true;
  };
  return crossed_iso_search(A, S, B, Zb, targets, hooks).has_value();
}

// Graded isomorphism search between graded-division algebras.
inline bool graded_iso_oracle(const GradedAlgebra& A, const GradedAlgebra& B, unsigned long long seed = 0) {
  if (A.grp != B.grp || A.alg.dim() != B.alg.dim() || A.alg.field() != B.alg.field()) return false;
  if (A.support() != B.support()) return false;
  for (int g : A.support())
    if (A.component(g).size() != B.component(g).size()) return false;
  std::vector<Vec> ea, eb;
  for (int i : A.component(0)) ea.push_back(A.alg.basis(i));
  for (int i : B.component(0)) eb.push_back(B.alg.basis(i));
  FieldInAlgebra Fa = field_in_algebra(A.alg, ea, A.alg.unit(), seed);
  FieldInAlgebra Fb = field_in_algebra(B.alg, eb, B.alg.unit(), seed);
  Subgroup T = Subgroup::from_elements(A.grp, A.support());
  std::vector<Vec> gens, targets;
  std::vector<int> orders;
  for (int i = 0; i < T.rank(); ++i) {
    const int t = T.basis()[i];
    gens.push_back(A.alg.basis(A.component(t)[0]));
    targets.push_back(B.alg.basis(B.component(t)[0]));
    orders.push_back(T.basis_orders()[i]);
  }
  CrossedShape S = crossed_shape(A.alg, Fa, gens, orders);
  return crossed_iso_search(A.alg, S, B.alg, Fb, targets).has_value();
}

// ------------------------------------------------- structure theorem checks

struct StructureCheck {
  bool ok = false;
  int blocks = 0;        // simple factors of Γ (GTCD only)
  int gamma_dim = 0;
  std::string failure;   // first failing identity
};

// Number of simple factors of a commutative semisimple algebra: the fixed
// space of x -> x^q.
inline int count_field_factors(const Algebra& Z) {
  const Field& F = Z.field();
  const int d = Z.dim();
  Matrix M(d, d);
  for (int j = 0; j < d; ++j) {
    Vec v = Z.power(Z.basis(j), static_cast<unsigned long long>(F.q()));
    v[j] = F.sub(v[j], 0);
    M.set_column(j, v);
  }
  return static_cast<int>(la::kernel(F, M).size());
}

// Conjugation x -> u x u^-1 on a subalgebra, in its coordinates.
inline Matrix conjugation_matrix(const Algebra& A, const SubAlgebra& S, const Vec& u) {
  auto ui = A.inverse(u);
  require(ui.has_value(), "not_invertible", "conjugating element is not invertible");
  const int r = S.alg.dim();
  Matrix M(r, r);
  for (int j = 0; j < r; ++j) M.set_column(j, S.coords.coords_or_throw(A.mul(A.mul(u, S.basis[j]), *ui)));
  return M;
}

// Checks that x_c (c running over a basis of a source algebra with the given
// product and action) is an (anti)isomorphism of G-algebras onto Γ.
inline StructureCheck check_against_gamma(const GammaResult& gam, const Algebra& src, const std::vector<Matrix>& src_gen,
                                          const std::vector<Vec>& images, bool anti) {
  const Field& F = src.field();
  const Algebra& B = gam.dual.alg;
  StructureCheck out;
  out.gamma_dim = gam.sub.alg.dim();
  const int d = src.dim();
  if (out.gamma_dim != d) {
    out.failure = "dimension";
    return out;
  }
  for (const Vec& v : images)
    if (!gam.sub.coords.coords(v)) {
      out.failure = "image_outside_centralizer";
      return out;
    }
  Matrix P = la::from_columns(B.dim(), images);
  if (la::rank(F, P) != d) {
    out.failure = "not_injective";
    return out;
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Vec lhs = la::apply(F, P, src.basis_mul(i, j));
      const Vec rhs = anti ? B.mul(images[j], images[i]) : B.mul(images[i], images[j]);
      if (lhs != rhs) {
        out.failure = anti ? "not_antihomomorphism" : "not_homomorphism";
        return out;
      }
    }
  const auto& W = gam.dual.grp;
  for (std::size_t t = 0; t < W.basis().size(); ++t) {
    const Matrix& Mh = gam.dual.mat(W.basis()[t]);
    for (int i = 0; i < d; ++i)
      if (la::apply(F, P, src_gen[t].column(i)) != la::apply(F, Mh, images[i])) {
        out.failure = "not_equivariant";
        return out;
      }
  }
  out.ok = true;
  return out;
}

// ψ: Cent_A(A_e) -> Γ(A), c ↦ Σ_g (g·c) ε_g with g·c = u_g c u_g^-1, for A
// graded by G with an invertible element in every component.
inline StructureCheck crossed_check(const GradedAlgebra& A, unsigned long long seed = 0) {
  const Field& F = A.alg.field();
  const AbGroup& G = A.grp;
  const Subgroup W = Subgroup::whole(G);
  std::vector<Vec> e;
  for (int i : A.component(0)) e.push_back(A.alg.basis(i));
  SubAlgebra Cs = subalgebra(A.alg, centralizer(A.alg, e));
  std::vector<Matrix> act(G.size());
  for (int g = 0; g < G.size(); ++g) {
    std::vector<Vec> comp;
    for (int i : A.component(g)) comp.push_back(A.alg.basis(i));
    auto u = find_invertible(A.alg, comp, seed);
    require(u.has_value(), "no_invertible", "a component has no invertible element");
    act[g] = conjugation_matrix(A.alg, Cs, *u);
  }
  std::vector<Matrix> gens;
  for (int b : W.basis()) gens.push_back(act[b]);
  GammaResult gam = gamma_of(A);
  const int da = A.alg.dim();
  std::vector<Vec> images;
  for (int i = 0; i < Cs.alg.dim(); ++i) {
    Vec v(static_cast<std::size_t>(G.size()) * da, kZero);
    for (int g = 0; g < G.size(); ++g) {
      const Vec gc = Cs.to_ambient(act[g].column(i));
      for (int x = 0; x < da; ++x) v[g * da + x] = gc[x];
    }
    images.push_back(std::move(v));
  }
  (void)F;
  return check_against_gamma(gam, Cs.alg, gens, images, true);
}

// Ψ: Ind_T^G(C) -> Γ(D), f ↦ Σ_g f(g) ε_g, C = Cent_D(D_e) with T acting by
// conjugation, D graded-division with support T.
inline StructureCheck gtcd_check(const GradedAlgebra& D) {
  const AbGroup& G = D.grp;
  const Subgroup W = Subgroup::whole(G);
  const Subgroup T = Subgroup::from_elements(G, D.support());
  std::vector<Vec> e;
  for (int i : D.component(0)) e.push_back(D.alg.basis(i));
  SubAlgebra Cs = subalgebra(D.alg, centralizer(D.alg, e));
  std::vector<Matrix> tg;
  for (int t : T.basis()) tg.push_back(conjugation_matrix(D.alg, Cs, D.alg.basis(D.component(t)[0])));
  GAlgebra CT = GAlgebra::create(Cs.alg, T, tg, true);
  GAlgebra Ind = induce(W, CT);
  GammaResult gam = gamma_of(D);
  const int dd = D.alg.dim();
  const int dc = Cs.alg.dim();
  std::vector<int> reps;
  for (int g : W.elements())
    if (make_coset(T, g).rep == g) reps.push_back(g);
  std::vector<Vec> images;
  for (std::size_t j = 0; j < reps.size(); ++j)
    for (int i = 0; i < dc; ++i) {
      Vec v(static_cast<std::size_t>(G.size()) * dd, kZero);
      for (int t : T.elements()) {
        const int g = G.add(t, reps[j]);
        const Vec val = Cs.to_ambient(CT.mat(t).column(i));
        for (int x = 0; x < dd; ++x) v[g * dd + x] = val[x];
      }
      images.push_back(std::move(v));
    }
  StructureCheck out = check_against_gamma(gam, Ind.alg, Ind.gen_mats(), images, true);
  out.blocks = count_field_factors(subalgebra(gam.sub.alg, center(gam.sub.alg)).alg);
  return out;
}

// c ↦ ψ(Φ^-1(R_c)): C -> Γ(C # FG), an isomorphism of G-algebras for a
// G-Galois extension C.
inline StructureCheck pp5_check(const GAlgebra& C) {
  const Field& F = C.alg.field();
  require(C.grp == Subgroup::whole(C.grp.parent()), "bad_group", "C must carry an action of its whole group");
  const int d = C.alg.dim();
  const Subgroup& G = C.grp;
  const AbGroup& Ab = G.parent();
  GradedAlgebra A = smash_group(C);
  const Matrix P = phi_matrix(C);
  const int da = A.alg.dim();
  auto u = [&](int g) {
    Vec v(da, kZero);
    for (int i = 0; i < d; ++i) v[G.pos(g) * d + i] = C.alg.unit()[i];
    return v;
  };
  std::vector<Vec> images;
  for (int i = 0; i < d; ++i) {
    auto y = la::solve(F, P, flatten(C.alg.right_mult(C.alg.basis(i))));
    if (!y) return {false, 0, 0, "phi_not_surjective"};
    Vec v(static_cast<std::size_t>(Ab.size()) * da, kZero);
    for (int g : G.elements()) {
      const Vec gy = A.alg.mul(A.alg.mul(u(g), *y), u(Ab.neg(g)));
      for (int x = 0; x < da; ++x) v[g * da + x] = gy[x];
    }
    images.push_back(std::move(v));
  }
  return check_against_gamma(gamma_of(A), C.alg, C.gen_mats(), images, false);
}

}  // namespace gdalg

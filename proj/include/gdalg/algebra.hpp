/**
 * @file algebra.hpp
 * @brief Finite-dimensional associative algebras over a finite field, given
 * by structure constants, with optional group grading or group action.
 */
#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "abgroup.hpp"
#include "cochain.hpp"
#include "linalg.hpp"
#include "poly.hpp"

namespace gdalg {

struct Term {
  int k;
  Log c;
  friend bool operator==(const Term& a, const Term& b) { return a.k == b.k && a.c == b.c; }
};

inline constexpr int kAssocCheckDim = 64;

class Algebra {
 public:
  Algebra() = default;

  Algebra(Field F, int dim, std::vector<std::vector<Term>> table, Vec unit, bool check = true)
      : F_(std::move(F)), dim_(dim), table_(std::move(table)), unit_(std::move(unit)) {
    require(dim_ >= 1, "bad_algebra", "dimension must be positive");
    require(static_cast<int>(table_.size()) == dim_ * dim_, "bad_algebra", "table size must be dim^2");
    require(static_cast<int>(unit_.size()) == dim_, "bad_algebra", "unit has the wrong length");
    for (auto& ts : table_) {
      std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return a.k < b.k; });
      for (const Term& t : ts) require(t.k >= 0 && t.k < dim_ && t.c >= 0, "bad_algebra", "bad structure constant");
    }
    if (check) {
      require(unit_ok(), "no_unit", "unit is not a two-sided identity");
      if (dim_ <= kAssocCheckDim) require(is_associative(), "not_associative", "structure constants are not associative");
    }
  }

  // table from dense products b_i b_j
  template <class Fn>
  static Algebra from_products(const Field& F, int dim, Fn prod, Vec unit, bool check = true) {
    std::vector<std::vector<Term>> t(static_cast<std::size_t>(dim) * dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const Vec v = prod(i, j);
        for (int k = 0; k < dim; ++k)
          if (v[k] >= 0) t[static_cast<std::size_t>(i) * dim + j].push_back({k, v[k]});
      }
    return Algebra(F, dim, std::move(t), std::move(unit), check);
  }

  const Field& field() const { return F_; }
  int dim() const { return dim_; }
  const Vec& unit() const { return unit_; }
  const std::vector<Term>& product(int i, int j) const { return table_[static_cast<std::size_t>(i) * dim_ + j]; }
  Vec basis(int i) const { return la::unit_vec(dim_, i); }

  Vec mul(const Vec& x, const Vec& y) const {
    Vec r(dim_, kZero);
    for (int i = 0; i < dim_; ++i) {
      if (x[i] < 0) continue;
      for (int j = 0; j < dim_; ++j) {
        if (y[j] < 0) continue;
        const Log c = F_.mul(x[i], y[j]);
        for (const Term& t : product(i, j)) r[t.k] = F_.add(r[t.k], F_.mul(c, t.c));
      }
    }
    return r;
  }
  Vec basis_mul(int i, int j) const {
    Vec r(dim_, kZero);
    for (const Term& t : product(i, j)) r[t.k] = t.c;
    return r;
  }

  // column j = x b_j
  Matrix left_mult(const Vec& x) const {
    Matrix M(dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
      if (x[i] < 0) continue;
      for (int j = 0; j < dim_; ++j)
        for (const Term& t : product(i, j)) M(t.k, j) = F_.add(M(t.k, j), F_.mul(x[i], t.c));
    }
    return M;
  }
  // column j = b_j x
  Matrix right_mult(const Vec& x) const {
    Matrix M(dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
      if (x[i] < 0) continue;
      for (int j = 0; j < dim_; ++j)
        for (const Term& t : product(j, i)) M(t.k, j) = F_.add(M(t.k, j), F_.mul(x[i], t.c));
    }
    return M;
  }

  bool is_invertible(const Vec& x) const { return la::rank(F_, left_mult(x)) == dim_; }

  std::optional<Vec> inverse(const Vec& x) const {
    auto y = la::solve(F_, left_mult(x), unit_);
    if (!y || mul(*y, x) != unit_) return std::nullopt;
    return y;
  }

  Vec power(Vec x, unsigned long long n) const {
    Vec r = unit_;
    while (n > 0) {
      if (n & 1) r = mul(r, x);
      n >>= 1;
      if (n) x = mul(x, x);
    }
    return r;
  }

  Vec scalar(Log c) const { return la::scale(F_, c, unit_); }

  bool unit_ok() const {
    for (int i = 0; i < dim_; ++i) {
      const Vec b = basis(i);
      if (mul(unit_, b) != b || mul(b, unit_) != b) return false;
    }
    return true;
  }

  bool is_associative() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        const auto& ij = product(i, j);
        for (int k = 0; k < dim_; ++k) {
          Vec lhs(dim_, kZero), rhs(dim_, kZero);
          for (const Term& t : ij)
            for (const Term& u : product(t.k, k)) lhs[u.k] = F_.add(lhs[u.k], F_.mul(t.c, u.c));
          for (const Term& t : product(j, k))
            for (const Term& u : product(i, t.k)) rhs[u.k] = F_.add(rhs[u.k], F_.mul(t.c, u.c));
          if (lhs != rhs) return false;
        }
      }
    return true;
  }

  bool is_commutative() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        if (product(i, j) != product(j, i)) return false;
    return true;
  }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.F_ == b.F_ && a.dim_ == b.dim_ && a.table_ == b.table_ && a.unit_ == b.unit_;
  }

 private:
  Field F_;
  int dim_ = 0;
  std::vector<std::vector<Term>> table_;
  Vec unit_;
};

// Algebra graded by an abelian group with a homogeneous basis.
struct GradedAlgebra {
  Algebra alg;
  AbGroup grp;
  std::vector<int> deg;  // group element (index) of each basis vector

  static GradedAlgebra create(Algebra alg, AbGroup grp, std::vector<int> deg, bool check = true) {
    require(static_cast<int>(deg.size()) == alg.dim(), "bad_grading", "one degree per basis vector expected");
    for (int g : deg) require(g >= 0 && g < grp.size(), "bad_grading", "degree outside the group");
    if (check) {
      for (int i = 0; i < alg.dim(); ++i)
        for (int j = 0; j < alg.dim(); ++j)
          for (const Term& t : alg.product(i, j))
            require(deg[t.k] == grp.add(deg[i], deg[j]), "not_graded", "product is not homogeneous");
      for (int i = 0; i < alg.dim(); ++i)
        require(alg.unit()[i] < 0 || deg[i] == 0, "not_graded", "unit is not of degree e");
    }
    return GradedAlgebra{std::move(alg), std::move(grp), std::move(deg)};
  }

  std::vector<int> component(int g) const {
    std::vector<int> out;
    for (int i = 0; i < alg.dim(); ++i)
      if (deg[i] == g) out.push_back(i);
    return out;
  }
  std::vector<int> support() const {
    std::vector<int> s(deg);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }
};

// Algebra with an action of a finite abelian group by automorphisms.
struct GAlgebra {
  Algebra alg;
  Subgroup grp;
  std::vector<Matrix> mats;  // by position in grp

  // gen_mats[i] is the action of grp.basis()[i]
  static GAlgebra create(Algebra alg, Subgroup grp, const std::vector<Matrix>& gen_mats, bool check = true) {
    require(static_cast<int>(gen_mats.size()) == grp.rank(), "bad_action", "one matrix per generator expected");
    const Field& F = alg.field();
    const int d = alg.dim();
    for (const Matrix& M : gen_mats) require(M.rows == d && M.cols == d, "bad_action", "action matrix has wrong shape");
    if (check) {
      for (int i = 0; i < grp.rank(); ++i) {
        const Matrix& M = gen_mats[i];
        require(la::apply(F, M, alg.unit()) == alg.unit(), "not_automorphism", "action does not fix the unit");
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            require(la::apply(F, M, alg.basis_mul(a, b)) == alg.mul(M.column(a), M.column(b)), "not_automorphism",
                    "action is not multiplicative");
        Matrix P = Matrix::identity(d);
        for (int t = 0; t < grp.basis_orders()[i]; ++t) P = la::mul(F, P, M);
        require(P == Matrix::identity(d), "not_action", "generator matrix has the wrong order");
        for (int j = 0; j < i; ++j)
          require(la::mul(F, M, gen_mats[j]) == la::mul(F, gen_mats[j], M), "not_action", "generator matrices do not commute");
      }
    }
    std::vector<Matrix> mats(grp.size());
    for (int g : grp.elements()) {
      const int* c = grp.coords(g);
      Matrix P = Matrix::identity(d);
      for (int i = 0; i < grp.rank(); ++i)
        for (int t = 0; t < c[i]; ++t) P = la::mul(F, P, gen_mats[i]);
      mats[grp.pos(g)] = std::move(P);
    }
    return GAlgebra{std::move(alg), std::move(grp), std::move(mats)};
  }

  const Matrix& mat(int g) const { return mats[grp.pos(g)]; }
  Vec act(int g, const Vec& x) const { return la::apply(alg.field(), mat(g), x); }
  std::vector<Matrix> gen_mats() const {
    std::vector<Matrix> out;
    for (int b : grp.basis()) out.push_back(mat(b));
    return out;
  }
};

// Subalgebra spanned by a basis (in ambient coordinates) containing the unit.
struct SubAlgebra {
  Algebra alg;
  std::vector<Vec> basis;
  SpanCoords coords;

  Vec to_ambient(const Vec& c) const {
    Vec v(basis.empty() ? 0 : basis[0].size(), kZero);
    for (std::size_t i = 0; i < basis.size(); ++i) la::axpy(alg.field(), c[i], basis[i], v);
    return v;
  }
};

// unit: element of the span acting as identity (default: the ambient unit)
inline SubAlgebra subalgebra(const Algebra& A, std::vector<Vec> basis, std::optional<Vec> unit = std::nullopt,
                             bool check = false) {
  SpanCoords sc(A.field(), A.dim(), basis);
  const int r = sc.size();
  std::vector<std::vector<Term>> table(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const Vec c = sc.coords_or_throw(A.mul(basis[i], basis[j]));
      for (int k = 0; k < r; ++k)
        if (c[k] >= 0) table[static_cast<std::size_t>(i) * r + j].push_back({k, c[k]});
    }
  const Vec u = sc.coords_or_throw(unit ? *unit : A.unit());
  return SubAlgebra{Algebra(A.field(), r, std::move(table), u, check), std::move(basis), std::move(sc)};
}

// Action of B restricted to a G-stable subalgebra.
inline GAlgebra restrict_action(const GAlgebra& B, const SubAlgebra& S) {
  std::vector<Matrix> gm;
  const int r = S.alg.dim();
  for (int g : B.grp.basis()) {
    Matrix M(r, r);
    for (int j = 0; j < r; ++j) M.set_column(j, S.coords.coords_or_throw(B.act(g, S.basis[j])));
    gm.push_back(std::move(M));
  }
  return GAlgebra::create(S.alg, B.grp, gm, false);
}

// {x : x s = s x for all s in S}
inline std::vector<Vec> centralizer(const Algebra& A, const std::vector<Vec>& S) {
  const int d = A.dim();
  if (S.empty()) {
    std::vector<Vec> all;
    for (int i = 0; i < d; ++i) all.push_back(A.basis(i));
    return all;
  }
  Matrix M(static_cast<int>(S.size()) * d, d);
  for (std::size_t s = 0; s < S.size(); ++s) {
    const Matrix Rs = A.right_mult(S[s]);
    const Matrix Ls = A.left_mult(S[s]);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) M(static_cast<int>(s) * d + r, c) = A.field().sub(Rs(r, c), Ls(r, c));
  }
  return la::kernel(A.field(), M);
}

inline std::vector<Vec> center(const Algebra& A) {
  std::vector<Vec> all;
  for (int i = 0; i < A.dim(); ++i) all.push_back(A.basis(i));
  return centralizer(A, all);
}

// {x : g x = x for all g}
inline std::vector<Vec> fixed_subspace(const GAlgebra& C) {
  const int d = C.alg.dim();
  const Field& F = C.alg.field();
  const int r = C.grp.rank();
  if (r == 0) {
    std::vector<Vec> all;
    for (int i = 0; i < d; ++i) all.push_back(C.alg.basis(i));
    return all;
  }
  Matrix M(r * d, d);
  for (int i = 0; i < r; ++i) {
    const Matrix& G = C.mat(C.grp.basis()[i]);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) M(i * d + a, b) = a == b ? F.sub(G(a, b), 0) : G(a, b);
  }
  return la::kernel(F, M);
}

inline Algebra opposite(const Algebra& A) {
  const int d = A.dim();
  std::vector<std::vector<Term>> t(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t[static_cast<std::size_t>(i) * d + j] = A.product(j, i);
  return Algebra(A.field(), d, std::move(t), A.unit(), false);
}

inline GAlgebra opposite(const GAlgebra& C) {
  return GAlgebra{opposite(C.alg), C.grp, C.mats};
}

inline Algebra tensor(const Algebra& A, const Algebra& B) {
  require(A.field() == B.field(), "mixed_fields", "tensor factors over different fields");
  const Field& F = A.field();
  const int da = A.dim(), db = B.dim(), d = da * db;
  std::vector<std::vector<Term>> t(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) {
          Vec acc(d, kZero);
          for (const Term& x : A.product(i, k))
            for (const Term& y : B.product(j, l)) acc[x.k * db + y.k] = F.add(acc[x.k * db + y.k], F.mul(x.c, y.c));
          auto& slot = t[static_cast<std::size_t>(i * db + j) * d + (k * db + l)];
          for (int s = 0; s < d; ++s)
            if (acc[s] >= 0) slot.push_back({s, acc[s]});
        }
  Vec u(d, kZero);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) u[i * db + j] = F.mul(A.unit()[i], B.unit()[j]);
  return Algebra(F, d, std::move(t), u, false);
}

// Smash product C # FG: basis b_i g at index pos(g)*dim + i, with
// (a g)(b h) = a (g.b) gh, graded by g.
inline GradedAlgebra smash_group(const GAlgebra& C) {
  const Field& F = C.alg.field();
  const int d = C.alg.dim();
  const Subgroup& G = C.grp;
  const AbGroup& A = G.parent();
  const int n = G.size() * d;
  std::vector<std::vector<Term>> t(static_cast<std::size_t>(n) * n);
  for (int g : G.elements())
    for (int h : G.elements()) {
      const Matrix& Mg = C.mat(g);
      const int gh = G.pos(A.add(g, h));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const Vec v = C.alg.mul(C.alg.basis(i), Mg.column(j));
          auto& slot = t[static_cast<std::size_t>(G.pos(g) * d + i) * n + (G.pos(h) * d + j)];
          for (int k = 0; k < d; ++k)
            if (v[k] >= 0) slot.push_back({gh * d + k, v[k]});
        }
    }
  Vec u(n, kZero);
  for (int i = 0; i < d; ++i) u[G.pos(0) * d + i] = C.alg.unit()[i];
  std::vector<int> deg(n);
  for (int g : G.elements())
    for (int i = 0; i < d; ++i) deg[G.pos(g) * d + i] = g;
  return GradedAlgebra::create(Algebra(F, n, std::move(t), u, false), A, deg, false);
}

// A # (FG)*: basis b_i ε_g at index g*dim + i, (a ε_g)(b ε_h) = (a b_{g h^-1}) ε_h,
// and g.(a ε_h) = a ε_{h g^-1}.
inline GAlgebra smash_dual(const GradedAlgebra& A) {
  const Field& F = A.alg.field();
  const int d = A.alg.dim();
  const AbGroup& G = A.grp;
  const int n = G.size() * d;
  std::vector<std::vector<Term>> t(static_cast<std::size_t>(n) * n);
  for (int g = 0; g < G.size(); ++g)
    for (int h = 0; h < G.size(); ++h) {
      const int need = G.sub(g, h);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          if (A.deg[j] != need) continue;
          auto& slot = t[static_cast<std::size_t>(g * d + i) * n + (h * d + j)];
          for (const Term& x : A.alg.product(i, j)) slot.push_back({h * d + x.k, x.c});
        }
    }
  Vec u(n, kZero);
  for (int g = 0; g < G.size(); ++g)
    for (int i = 0; i < d; ++i) u[g * d + i] = A.alg.unit()[i];
  Algebra B(F, n, std::move(t), u, false);
  Subgroup W = Subgroup::whole(G);
  std::vector<Matrix> gm;
  for (int g : W.basis()) {
    Matrix M(n, n);
    for (int h = 0; h < G.size(); ++h)
      for (int i = 0; i < d; ++i) M(G.sub(h, g) * d + i, h * d + i) = 0;
    gm.push_back(std::move(M));
  }
  return GAlgebra::create(std::move(B), W, gm, false);
}

// a -> sum_g a ε_g, the embedding of A into A # (FG)*.
inline Vec embed_in_dual(const GradedAlgebra& A, const Vec& a) {
  const int d = A.alg.dim();
  Vec v(static_cast<std::size_t>(A.grp.size()) * d, kZero);
  for (int g = 0; g < A.grp.size(); ++g)
    for (int i = 0; i < d; ++i) v[g * d + i] = a[i];
  return v;
}

struct GammaResult {
  GAlgebra dual;     // A # (FG)*
  SubAlgebra sub;    // Γ(A) inside dual
  GAlgebra gamma;    // Γ(A) with the restricted action
};

// Γ(A) = Cent_{A#(FG)*}(A).
inline GammaResult gamma_of(const GradedAlgebra& A) {
  GAlgebra B = smash_dual(A);
  std::vector<Vec> S;
  for (int i = 0; i < A.alg.dim(); ++i) S.push_back(embed_in_dual(A, A.alg.basis(i)));
  auto basis = centralizer(B.alg, S);
  SubAlgebra sub = subalgebra(B.alg, basis);
  GAlgebra gam = restrict_action(B, sub);
  return GammaResult{std::move(B), std::move(sub), std::move(gam)};
}

// L^τ K as an F-algebra: basis ω_L^j X_k at index pos(k)*n + j, graded by
// the ambient group of K, with X_k X_l = τ(k, l) X_{kl}.
inline GradedAlgebra twisted_group_algebra(const Tower& tw, const Cocycle2& tau) {
  const Field& F = tw.base();
  const Field& L = tw.top();
  require(tau.F == L, "mixed_fields", "cocycle values must lie in the top field");
  const Subgroup& K = tau.dom;
  const AbGroup& A = K.parent();
  const int n = tw.degree();
  const int d = K.size() * n;
  std::vector<std::vector<Term>> t(static_cast<std::size_t>(d) * d);
  for (int k : K.elements())
    for (int l : K.elements()) {
      const int kl = K.pos(A.add(k, l));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Log* c = tw.coords(L.mul(static_cast<Log>(i + j), tau(k, l)));
          auto& slot = t[static_cast<std::size_t>(K.pos(k) * n + i) * d + (K.pos(l) * n + j)];
          for (int r = 0; r < n; ++r)
            if (c[r] >= 0) slot.push_back({kl * n + r, c[r]});
        }
    }
  Vec u(d, kZero);
  const Log* c = tw.coords(L.inv(tau(0, 0)));
  for (int r = 0; r < n; ++r) u[K.pos(0) * n + r] = c[r];
  std::vector<int> deg(d);
  for (int k : K.elements())
    for (int i = 0; i < n; ++i) deg[K.pos(k) * n + i] = k;
  return GradedAlgebra::create(Algebra(F, d, std::move(t), u), A, deg, false);
}

// Minimal polynomial of x over F inside the unital algebra with unit e.
inline Poly minimal_polynomial(const Algebra& A, const Vec& x, const Vec& e) {
  const Field& F = A.field();
  std::vector<Vec> pw{e};
  for (int k = 1; k <= A.dim() + 1; ++k) {
    Vec next = A.mul(pw.back(), x);
    Matrix M = la::from_columns(A.dim(), pw);
    auto sol = la::solve(F, M, next);
    if (sol) {
      Poly m(k + 1, kZero);
      for (int i = 0; i < k; ++i) m[i] = F.neg((*sol)[i]);
      m[k] = 0;
      poly::trim(m);
      return m;
    }
    pw.push_back(std::move(next));
  }
  throw InternalError("minimal polynomial not found");
}

inline Vec eval_poly(const Algebra& A, const Poly& p, const Vec& x, const Vec& e) {
  Vec acc(A.dim(), kZero);
  for (int i = poly::deg(p); i >= 0; --i) {
    acc = A.mul(acc, x);
    la::axpy(A.field(), p[i], e, acc);
  }
  return acc;
}

// Finite division algebras are fields: commutative, Frobenius x -> x^q
// injective (reduced) with fixed space F.
inline bool is_division(const Algebra& A) {
  if (!A.is_commutative()) return false;
  const Field& F = A.field();
  const int d = A.dim();
  Matrix Fr(d, d);
  for (int j = 0; j < d; ++j) Fr.set_column(j, A.power(A.basis(j), static_cast<unsigned long long>(F.q())));
  if (la::rank(F, Fr) != d) return false;
  for (int i = 0; i < d; ++i) Fr(i, i) = F.sub(Fr(i, i), 0);
  return static_cast<int>(la::kernel(F, Fr).size()) == 1;
}

// Primitive idempotent of a semisimple algebra: repeatedly split the current
// corner eAe with an element whose minimal polynomial has two coprime factors.
inline Vec split_primitive_idempotent(const Algebra& A, unsigned long long seed = 0) {
  const Field& F = A.field();
  std::mt19937_64 rng(seed);
  Vec e = A.unit();
  for (int round = 0; round < 64; ++round) {
    std::vector<Vec> span;
    for (int i = 0; i < A.dim(); ++i) span.push_back(A.mul(A.mul(e, A.basis(i)), e));
    auto basis = la::span_basis(F, A.dim(), span);
    SubAlgebra B = subalgebra(A, basis, e);
    if (is_division(B.alg)) return e;
    std::vector<Vec> cands = basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j) cands.push_back(la::add(F, basis[i], basis[j]));
    std::uniform_int_distribution<int> dist(-1, F.q() - 2);
    for (int r = 0; r < 200; ++r) {
      Vec v(A.dim(), kZero);
      for (const Vec& b : basis) la::axpy(F, static_cast<Log>(dist(rng)), b, v);
      cands.push_back(v);
    }
    bool split = false;
    for (const Vec& x : cands) {
      Poly m = minimal_polynomial(A, x, e);
      auto fs = poly::factor(F, m);
      if (fs.size() < 2) continue;
      Poly a{0};
      for (int t = 0; t < fs[0].second; ++t) a = poly::mul(F, a, fs[0].first);
      Poly b = poly::divmod(F, m, a).first;
      auto [g, s, tt] = poly::ext_gcd(F, a, b);
      ensure(g == Poly{0}, "factors not coprime");
      Vec next = eval_poly(A, poly::mul(F, tt, b), x, e);
      ensure(A.mul(next, next) == next && !la::is_zero(next) && next != e, "bad idempotent");
      e = std::move(next);
      split = true;
      break;
    }
    require(split, "non_semisimple", "no splitting element found; algebra is likely not semisimple");
  }
  throw InternalError("idempotent splitting did not terminate");
}

struct CornerResult {
  GradedAlgebra alg;
  std::vector<Vec> basis;  // ambient coordinates
};

// E A E with grading E A_g E, E idempotent of degree e.
inline CornerResult corner(const Vec& E, const GradedAlgebra& A) {
  const Field& F = A.alg.field();
  require(A.alg.mul(E, E) == E, "not_idempotent", "E must be idempotent");
  for (int i = 0; i < A.alg.dim(); ++i)
    require(E[i] < 0 || A.deg[i] == 0, "not_graded", "E must have degree e");
  std::vector<Vec> basis;
  std::vector<int> deg;
  for (int g : A.support()) {
    std::vector<Vec> span;
    for (int i : A.component(g)) span.push_back(A.alg.mul(A.alg.mul(E, A.alg.basis(i)), E));
    for (Vec& v : la::span_basis(F, A.alg.dim(), span)) {
      basis.push_back(std::move(v));
      deg.push_back(g);
    }
  }
  SubAlgebra S = subalgebra(A.alg, basis, E);
  return CornerResult{GradedAlgebra::create(S.alg, A.grp, deg, false), basis};
}

// x * y = γ(g1, g2) x y for x in A_g1, y in A_g2.
inline GradedAlgebra cocycle_twist(const GradedAlgebra& A, const Cocycle2& gamma) {
  const Field& F = A.alg.field();
  require(gamma.F == F, "mixed_fields", "cocycle values must lie in the base field");
  const int d = A.alg.dim();
  std::vector<std::vector<Term>> t(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Log c = gamma(A.deg[i], A.deg[j]);
      for (const Term& x : A.alg.product(i, j)) t[static_cast<std::size_t>(i) * d + j].push_back({x.k, F.mul(c, x.c)});
    }
  Vec u = la::scale(F, F.inv(gamma(0, 0)), A.alg.unit());
  return GradedAlgebra::create(Algebra(F, d, std::move(t), u, false), A.grp, A.deg, false);
}

// Twisted loop algebra: sum over t in T of Dbar_{π(t)} ⊗ t with
// (x ⊗ t)(y ⊗ u) = γ(t, u) x y ⊗ tu. Dbar is graded by Q.Q = T/H.
inline GradedAlgebra loop_twisted(const GradedAlgebra& Dbar, const Quotient& Q, const Cocycle2& gamma) {
  const Field& F = Dbar.alg.field();
  require(Dbar.grp == Q.Q, "bad_grading", "Dbar must be graded by the quotient group");
  require(gamma.dom == Q.T, "bad_cochain", "cocycle must live on T");
  const AbGroup& A = Q.T.parent();
  std::vector<int> first(A.size(), -1);
  std::vector<int> tdeg;
  std::vector<int> local;  // basis index in Dbar
  for (int t : Q.T.elements()) {
    first[t] = static_cast<int>(tdeg.size());
    for (int i : Dbar.component(Q.proj[t])) {
      tdeg.push_back(t);
      local.push_back(i);
    }
  }
  const int n = static_cast<int>(tdeg.size());
  std::vector<int> offset(Dbar.alg.dim(), -1);  // position of basis index within its component
  for (int g = 0; g < Dbar.grp.size(); ++g) {
    auto comp = Dbar.component(g);
    for (std::size_t s = 0; s < comp.size(); ++s) offset[comp[s]] = static_cast<int>(s);
  }
  std::vector<std::vector<Term>> tab(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int tu = A.add(tdeg[a], tdeg[b]);
      const Log c = gamma(tdeg[a], tdeg[b]);
      for (const Term& x : Dbar.alg.product(local[a], local[b]))
        tab[static_cast<std::size_t>(a) * n + b].push_back({first[tu] + offset[x.k], F.mul(c, x.c)});
    }
  Vec u(n, kZero);
  const Log ci = F.inv(gamma(0, 0));
  for (int a = first[0]; a < n && tdeg[a] == 0; ++a) u[a] = F.mul(ci, Dbar.alg.unit()[local[a]]);
  return GradedAlgebra::create(Algebra(F, n, std::move(tab), u, false), A, tdeg, false);
}

// A^ψ for ψ = Frobenius^j of F: scalars act through ψ, so every coefficient
// is transformed by ψ^-1.
inline Algebra pull_scalars(const Algebra& A, long j) {
  const Field& F = A.field();
  const int d = A.dim();
  std::vector<std::vector<Term>> t(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (const Term& x : A.product(i, k)) t[static_cast<std::size_t>(i) * d + k].push_back({x.k, F.frob(x.c, -j)});
  Vec u(d);
  for (int i = 0; i < d; ++i) u[i] = F.frob(A.unit()[i], -j);
  return Algebra(F, d, std::move(t), u, false);
}

inline GradedAlgebra pull_scalars(const GradedAlgebra& A, long j) {
  return GradedAlgebra{pull_scalars(A.alg, j), A.grp, A.deg};
}

inline GAlgebra pull_scalars(const GAlgebra& C, long j) {
  GAlgebra out{pull_scalars(C.alg, j), C.grp, C.mats};
  for (auto& M : out.mats)
    for (auto& v : M.a) v = C.alg.field().frob(v, -j);
  return out;
}

// Same algebra in the basis b'_j = sum_i P_ij b_i.
inline Algebra rebase(const Algebra& A, const Matrix& P) {
  const Field& F = A.field();
  auto Pi = la::inverse(F, P);
  require(Pi.has_value(), "singular", "change of basis must be invertible");
  const int d = A.dim();
  return Algebra::from_products(
      F, d, [&](int i, int j) { return la::apply(F, *Pi, A.mul(P.column(i), P.column(j))); },
      la::apply(F, *Pi, A.unit()), false);
}

inline GAlgebra rebase(const GAlgebra& C, const Matrix& P) {
  const Field& F = C.alg.field();
  auto Pi = la::inverse(F, P);
  require(Pi.has_value(), "singular", "change of basis must be invertible");
  GAlgebra out{rebase(C.alg, P), C.grp, C.mats};
  for (auto& M : out.mats) M = la::mul(F, *Pi, la::mul(F, M, P));
  return out;
}

struct GradedDivisionReport {
  bool ok = false;
  std::string reason;
};

// Every nonzero homogeneous element is invertible: D_e is a division algebra
// and each nonzero component is D_e u_g for an invertible u_g.
inline GradedDivisionReport graded_division_report(const GradedAlgebra& D) {
  const Field& F = D.alg.field();
  auto comp0 = D.component(0);
  if (comp0.empty()) return {false, "empty_identity_component"};
  std::vector<Vec> b0;
  for (int i : comp0) b0.push_back(D.alg.basis(i));
  SubAlgebra De = subalgebra(D.alg, b0);
  if (!is_division(De.alg)) return {false, "identity_component_not_division"};
  const auto supp = D.support();
  for (int g : supp) {
    auto comp = D.component(g);
    if (comp.size() != comp0.size()) return {false, "component_dimension_mismatch"};
    if (!D.alg.is_invertible(D.alg.basis(comp[0]))) return {false, "component_without_unit"};
    for (int h : supp)
      if (!std::binary_search(supp.begin(), supp.end(), D.grp.add(g, h))) return {false, "support_not_subgroup"};
  }
  (void)F;
  return {true, ""};
}

inline bool is_graded_division(const GradedAlgebra& D) { return graded_division_report(D).ok; }

}  // namespace gdalg

/**
 * @file samples.hpp
 * @brief Seeded random G-algebras drawn from structured families, used to
 * compare the Galois criterion with the direct definition.
 */
#pragma once

#include <random>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "galois.hpp"

namespace gdalg {

struct Sample {
  GAlgebra alg;
  std::string family;
};

namespace detail {

inline int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline AbGroup random_group(std::mt19937_64& rng, int max_order) {
  static const std::vector<std::vector<int>> shapes{{1}, {2}, {3}, {4}, {2, 2}, {5}, {6}, {7}, {8}, {4, 2}, {2, 2, 2}};
  std::vector<std::vector<int>> ok;
  for (const auto& s : shapes) {
    int n = 1;
    for (int o : s) n *= o;
    if (n <= max_order) ok.push_back(s);
  }
  return AbGroup(ok[pick(rng, 0, static_cast<int>(ok.size()) - 1)]);
}

// random homomorphism from the basis of G into Z/k
inline std::vector<int> random_hom(std::mt19937_64& rng, const Subgroup& G, int k) {
  std::vector<int> v;
  for (int o : G.basis_orders()) {
    const int g = std::gcd(o, k);
    v.push_back(pick(rng, 0, g - 1) * (k / g));
  }
  return v;
}

inline Matrix random_invertible(std::mt19937_64& rng, const Field& F, int d) {
  while (true) {
    Matrix P(d, d);
    for (auto& x : P.a) x = static_cast<Log>(pick(rng, -1, F.q() - 2));
    if (la::rank(F, P) == d) return P;
  }
}

// L = GF(q^k) with g acting as Frobenius^(e h(g))
inline GAlgebra field_with_frobenius(const Field& F, const Subgroup& G, int k, const std::vector<int>& h) {
  const Tower tw = Tower::create(F, k);
  const Subgroup one = Subgroup::from_elements(G.parent(), {0});
  const Cocycle2 triv = Cocycle2::from_function(one, tw.top(), [](int, int) { return Log{0}; });
  Algebra A = twisted_group_algebra(tw, triv).alg;
  std::vector<Matrix> gm;
  for (std::size_t i = 0; i < h.size(); ++i) {
    Matrix M(k, k);
    for (int r = 0; r < k; ++r) {
      const Log* c = tw.coords(tw.frobenius(static_cast<long>(F.m()) * h[i], static_cast<Log>(r)));
      for (int t = 0; t < k; ++t) M(t, r) = c[t];
    }
    gm.push_back(std::move(M));
  }
  return GAlgebra::create(std::move(A), G, gm, true);
}

// F^τ A with τ from a random bicharacter, g·X_a = λ(g, a) X_a
inline GAlgebra twisted_with_characters(std::mt19937_64& rng, const Field& F, const Subgroup& G, const Subgroup& A) {
  const Tower tw = Tower::create(F, 1);
  const long N = F.units();
  std::vector<std::vector<Log>> m(A.rank(), std::vector<Log>(A.rank(), 0));
  for (int i = 0; i < A.rank(); ++i)
    for (int j = 0; j < A.rank(); ++j) {
      const long g = std::gcd(std::gcd(static_cast<long>(A.basis_orders()[i]), static_cast<long>(A.basis_orders()[j])), N);
      m[i][j] = static_cast<Log>(pick(rng, 0, static_cast<int>(g) - 1) * (N / g));
    }
  const Cocycle2 tau = upper_triangular_cocycle(Bicharacter(A, tw.top(), m));
  Algebra alg = twisted_group_algebra(tw, tau).alg;
  // λ(b_i, a_j) on basis pairs
  std::vector<std::vector<long>> lam(G.rank(), std::vector<long>(A.rank()));
  for (int i = 0; i < G.rank(); ++i)
    for (int j = 0; j < A.rank(); ++j) {
      const long g = std::gcd(std::gcd(static_cast<long>(G.basis_orders()[i]), static_cast<long>(A.basis_orders()[j])), N);
      lam[i][j] = pick(rng, 0, static_cast<int>(g) - 1) * (N / g);
    }
  std::vector<Matrix> gm;
  for (int i = 0; i < G.rank(); ++i) {
    Matrix M(A.size(), A.size());
    for (int a : A.elements()) {
      const int* c = A.coords(a);
      long e = 0;
      for (int j = 0; j < A.rank(); ++j) e += lam[i][j] * c[j];
      M(A.pos(a), A.pos(a)) = static_cast<Log>(e % N);
    }
    gm.push_back(std::move(M));
  }
  return GAlgebra::create(std::move(alg), G, gm, true);
}

// F[x]/(x^k), g acting as x -> ω^(c(g)) x
inline GAlgebra truncated_polynomial(std::mt19937_64& rng, const Field& F, const Subgroup& G, int k) {
  const int n = k;
  Algebra A = Algebra::from_products(
      F, n, [&](int i, int j) { return i + j < n ? la::unit_vec(n, i + j) : la::zeros(n); }, la::unit_vec(n, 0), false);
  const long N = F.units();
  std::vector<Matrix> gm;
  for (int o : G.basis_orders()) {
    const long g = std::gcd(static_cast<long>(o), N);
    const long c = pick(rng, 0, static_cast<int>(g) - 1) * (N / g);
    Matrix M(n, n);
    for (int i = 0; i < n; ++i) M(i, i) = static_cast<Log>(c * i % N);
    gm.push_back(std::move(M));
  }
  return GAlgebra::create(std::move(A), G, gm, true);
}

}  // namespace detail

// One random G-algebra with |G| <= max_order and dim <= max_dim, in a random
// basis. Families: Frobenius actions on fields, twisted group algebras with
// diagonal character actions, truncated polynomial rings, induction and
// opposites of these.
inline Sample random_galgebra(std::mt19937_64& rng, int max_order = 8, int max_dim = 8) {
  static const std::vector<std::pair<int, int>> fields{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}};
  while (true) {
    const auto [p, m] = fields[detail::pick(rng, 0, static_cast<int>(fields.size()) - 1)];
    const Field F = Field::create(p, m);
    const AbGroup Ab = detail::random_group(rng, max_order);
    const Subgroup G = Subgroup::whole(Ab);
    const int fam = detail::pick(rng, 0, 4);
    // half of the draws match dim = |G| so later conditions get exercised
    const bool match = detail::pick(rng, 0, 1) == 0 && G.size() <= max_dim;
    std::optional<Sample> s;
    if (fam == 0) {
      const int k = match ? G.size() : detail::pick(rng, 1, max_dim);
      if (detail::ipow(F.q(), k) > 4096) continue;
      s = Sample{detail::field_with_frobenius(F, G, k, detail::random_hom(rng, G, k)), "field"};
    } else if (fam == 1) {
      const AbGroup Aa = match ? Ab : detail::random_group(rng, max_dim);
      s = Sample{detail::twisted_with_characters(rng, F, G, Subgroup::whole(Aa)), "twisted"};
    } else if (fam == 2) {
      s = Sample{detail::truncated_polynomial(rng, F, G, match ? G.size() : detail::pick(rng, 1, max_dim)), "truncated"};
    } else {
      // induction from a random subgroup of a field or twisted algebra
      const auto subs = enumerate_subgroups(Ab);
      const Subgroup T = subs[detail::pick(rng, 0, static_cast<int>(subs.size()) - 1)];
      const int idx = G.size() / T.size();
      GAlgebra C;
      if (detail::pick(rng, 0, 1) == 0) {
        const int k = match ? T.size() : detail::pick(rng, 1, std::max(1, max_dim / idx));
        if (detail::ipow(F.q(), k) > 4096) continue;
        C = detail::field_with_frobenius(F, T, k, detail::random_hom(rng, T, k));
      } else {
        const AbGroup Aa = match ? AbGroup(T.invariant_factors().empty() ? std::vector<int>{1} : T.invariant_factors())
                                 : detail::random_group(rng, std::max(1, max_dim / idx));
        C = detail::twisted_with_characters(rng, F, T, Subgroup::whole(Aa));
      }
      s = Sample{induce(G, C), "induced"};
      if (fam == 4) s = Sample{opposite(s->alg), "induced_opposite"};
    }
    if (s->alg.alg.dim() > max_dim) continue;
    s->alg = rebase(s->alg, detail::random_invertible(rng, F, s->alg.alg.dim()));
    return *s;
  }
}

}  // namespace gdalg

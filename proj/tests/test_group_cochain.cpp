#include <gtest/gtest.h>

#include "gdalg/abgroup.hpp"
#include "gdalg/cochain.hpp"

using namespace gdalg;

namespace {

// Gaussian binomial sum: number of subgroups of (Z/p)^r
long elementary_subgroup_count(long p, int r) {
  long total = 0;
  for (int k = 0; k <= r; ++k) {
    long num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
      num *= detail::ipow(p, r - i) - 1;
      den *= detail::ipow(p, i + 1) - 1;
    }
    total += num / den;
  }
  return total;
}

int elt(const AbGroup& G, std::vector<int> t) { return G.index(t); }

}  // namespace

TEST(AbGroup, SubgroupCounts) {
  for (int p : {2, 3})
    for (int r = 1; r <= 3; ++r) {
      AbGroup G(std::vector<int>(r, p));
      EXPECT_EQ(static_cast<long>(enumerate_subgroups(G).size()), elementary_subgroup_count(p, r)) << p << "^" << r;
    }
  EXPECT_EQ(enumerate_subgroups(AbGroup({2, 2, 2})).size(), 16u);
  EXPECT_EQ(enumerate_subgroups(AbGroup({3, 3})).size(), 6u);
  EXPECT_EQ(enumerate_subgroups(AbGroup({4, 2})).size(), 8u);
  EXPECT_EQ(enumerate_subgroups(AbGroup({2, 2, 2, 2})).size(), 67u);
  EXPECT_EQ(enumerate_subgroups(AbGroup({4, 4})).size(), 15u);
  EXPECT_EQ(enumerate_subgroups(AbGroup({4})).size(), 3u);
  EXPECT_EQ(enumerate_subgroups(AbGroup({7})).size(), 2u);
}

TEST(AbGroup, GeneratedTorsionQuotient) {
  AbGroup G({4, 2});
  Subgroup S = Subgroup::generated(G, {elt(G, {2, 1})});
  EXPECT_EQ(S.elements(), (std::vector<int>{elt(G, {0, 0}), elt(G, {2, 1})}));
  EXPECT_EQ(S.invariant_factors(), (std::vector<int>{2}));
  EXPECT_EQ(Subgroup::generated(G, {}).size(), 1);
  EXPECT_EQ(Subgroup::generated(G, {elt(G, {1, 0}), elt(G, {0, 1})}), Subgroup::whole(G));
  Subgroup W = Subgroup::whole(G);
  Subgroup T2 = W.torsion(2);
  EXPECT_EQ(T2.size(), 4);
  EXPECT_EQ(T2.invariant_factors(), (std::vector<int>{2, 2}));
  AbGroup Z4({4});
  Quotient Q = quotient(Subgroup::whole(Z4), Subgroup::generated(Z4, {2}));
  EXPECT_EQ(Q.Q.size(), 2);
  EXPECT_EQ(Q.section, (std::vector<int>{0, 1}));
  for (auto [T, H] : std::vector<std::pair<std::vector<int>, std::vector<int>>>{{{4, 2}, {2, 0}}, {{2, 2, 2}, {1, 1, 0}}}) {
    AbGroup A(T);
    Subgroup Hs = Subgroup::generated(A, {A.index(H)});
    Quotient q = quotient(Subgroup::whole(A), Hs);
    EXPECT_EQ(q.Q.size() * Hs.size(), A.size());
    for (int x = 0; x < A.size(); ++x)
      for (int y = 0; y < A.size(); ++y) EXPECT_EQ(q.proj[A.add(x, y)], q.Q.add(q.proj[x], q.proj[y]));
  }
  EXPECT_TRUE(is_hyperbolic(Subgroup::whole(AbGroup({2, 2}))));
  EXPECT_FALSE(is_hyperbolic(Subgroup::whole(AbGroup({2}))));
  EXPECT_FALSE(is_hyperbolic(Subgroup::whole(AbGroup({4, 2}))));
  EXPECT_TRUE(is_hyperbolic(Subgroup::whole(AbGroup({2, 4, 2, 4}))));
}

TEST(Bicharacter, NondegenerateCountsAndSymplectic) {
  Field F3 = Field::create(3, 1);
  Field F5 = Field::create(5, 1);
  Field F9 = Field::create(3, 2);
  EXPECT_EQ(enumerate_nondegenerate_alternating(Subgroup::whole(AbGroup({2, 2})), F3).size(), 1u);
  EXPECT_EQ(enumerate_nondegenerate_alternating(Subgroup::whole(AbGroup({2, 2, 2, 2})), F3).size(), 28u);
  EXPECT_EQ(enumerate_nondegenerate_alternating(Subgroup::whole(AbGroup({4, 4})), F5).size(), 2u);
  EXPECT_TRUE(enumerate_nondegenerate_alternating(Subgroup::whole(AbGroup({2})), F3).empty());
  EXPECT_EQ(enumerate_nondegenerate_alternating(Subgroup::whole(AbGroup({1})), F3).size(), 1u);
  for (auto [orders, F] : std::vector<std::pair<std::vector<int>, Field>>{
           {{2, 2}, F3}, {{4, 4}, F9}, {{2, 2, 2, 2}, F3}, {{4, 4}, F5}, {{2, 4, 2, 4}, F5}}) {
    Subgroup K = Subgroup::whole(AbGroup(orders));
    for (const Bicharacter& b : enumerate_nondegenerate_alternating(K, F)) {
      ASSERT_TRUE(b.is_alternating());
      // k -> β(., k) is injective
      std::set<std::vector<Log>> rows;
      for (int k : K.elements()) {
        std::vector<Log> r;
        for (int x : K.elements()) r.push_back(b(x, k));
        rows.insert(r);
      }
      EXPECT_EQ(static_cast<int>(rows.size()), K.size());
      // the symplectic basis regenerates β
      auto sb = symplectic_basis(b);
      Subgroup S = Subgroup::with_basis(K.parent(), sb);
      EXPECT_EQ(S, K);
      for (std::size_t i = 0; i < sb.size(); ++i)
        for (std::size_t j = 0; j < sb.size(); ++j) {
          const Log v = b(sb[i], sb[j]);
          if (i / 2 != j / 2) EXPECT_EQ(v, 0);
          else if (i != j) EXPECT_EQ(F.order(v), K.parent().order_of(sb[i]));
        }
    }
  }
  // orbit representatives under Frobenius of GF(9) on (Z/4)^2: ω_4 and ω_4^3 are conjugate
  auto all = enumerate_nondegenerate_alternating(Subgroup::whole(AbGroup({4, 4})), F9);
  EXPECT_EQ(all.size(), 2u);
  EXPECT_EQ(bichar_orbit_reps(all).size(), 1u);
}

TEST(Cochain, H1Sizes) {
  Field F3 = Field::create(3, 1);
  Tower T2 = Tower::create(F3, 2);
  AbGroup Z4({4});
  Subgroup G = Subgroup::whole(Z4);
  Subgroup K = Subgroup::generated(Z4, {2});
  ActionSpec spec = ActionSpec::create(T2, G, make_coset(K, 1));
  H1Result h = h1(spec);
  EXPECT_EQ(h.z1, 8);
  EXPECT_EQ(h.b1, 4);
  EXPECT_EQ(h.size(), 2);
  AbGroup Z2({2});
  ActionSpec s2 = ActionSpec::create(T2, Subgroup::whole(Z2), make_coset(Subgroup::generated(Z2, {}), 1));
  EXPECT_EQ(h1(s2).size(), 1);
  // trivial action: cocycles are characters
  Tower T1 = Tower::create(F3, 1);
  AbGroup V({2, 2});
  Subgroup W = Subgroup::whole(V);
  ActionSpec s3 = ActionSpec::create(T1, W, make_coset(W, 0));
  EXPECT_EQ(h1(s3).size(), 4);
  // restrictions of class representatives are pairwise distinct
  std::vector<Character> res;
  for (const auto& f : h.reps) res.push_back(restriction(f));
  EXPECT_FALSE(res[0] == res[1]);
}

TEST(Cochain, ExtendCharacter) {
  Field F3 = Field::create(3, 1);
  Tower T2 = Tower::create(F3, 2);
  AbGroup Z4({4});
  Subgroup G = Subgroup::whole(Z4);
  Subgroup K = Subgroup::generated(Z4, {2});
  ActionSpec spec = ActionSpec::create(T2, G, make_coset(K, 1));
  Character lam(K, F3, {1});
  Cocycle1 f = extend_character(spec, lam);
  EXPECT_EQ(f(1), 1);  // μ0 = ω
  EXPECT_EQ(f(2), 4);  // ω·ω^3 = -1
  EXPECT_TRUE(restriction(f) == lam);
  for (Log v : extend_character(spec, Character::trivial(K, F3)).v) EXPECT_EQ(v, 0);
  EXPECT_THROW(extend_character(spec, lam, Log{0}), ConstraintError);
  Cocycle1 g = extend_character(spec, lam, Log{3});
  EXPECT_EQ(g(1), 3);
  EXPECT_TRUE(restriction(g) == lam);
  // d ω for Z/2 acting on GF(9)
  AbGroup Z2({2});
  ActionSpec s2 = ActionSpec::create(T2, Subgroup::whole(Z2), make_coset(Subgroup::generated(Z2, {}), 1));
  EXPECT_EQ(coboundary1(s2, 1)(1), 2);
  EXPECT_TRUE(restriction(coboundary1(spec, 5)) == Character::trivial(K, F3));
}

TEST(Cochain, TwoCocycles) {
  Field F3 = Field::create(3, 1);
  AbGroup V({2, 2});
  Subgroup K = Subgroup::whole(V);
  Bicharacter beta(K, F3, {{0, 1}, {1, 0}});
  Cocycle2 tau = upper_triangular_cocycle(beta);
  EXPECT_TRUE(tau.is_cocycle());
  EXPECT_EQ(alt(tau), beta);
  EXPECT_FALSE(tau.is_symmetric());
  for (int x : K.elements())
    for (int y : K.elements()) {
      auto a = V.tuple(x), b = V.tuple(y);
      EXPECT_EQ(tau(x, y), (a[0] * b[1]) % 2);
    }
  // alt is constant on cohomology classes
  auto dc = Cocycle2::from_function(K, F3, [&](int x, int y) {
    auto c = [&](int z) { return static_cast<Log>(z == 1 || z == 3 ? 1 : 0); };
    return F3.div(F3.mul(c(x), c(y)), c(V.add(x, y)));
  });
  EXPECT_TRUE(is_coboundary(dc));
  Cocycle2 tau2 = tau;
  for (std::size_t i = 0; i < tau2.t.size(); ++i) tau2.t[i] = F3.mul(tau.t[i], dc.t[i]);
  EXPECT_EQ(alt(tau2), beta);
  EXPECT_FALSE(is_coboundary(tau));
  // symmetric classes on Z/2 over GF(3): γ(a,a) = ±1, the nontrivial one is not a coboundary
  AbGroup Z2({2});
  Subgroup S = Subgroup::whole(Z2);
  auto gam = gamma_from_character(S, Character(S, F3, {1}));
  EXPECT_EQ(gam(1, 1), 1);
  EXPECT_TRUE(gam.is_symmetric() && gam.is_cocycle());
  EXPECT_FALSE(is_coboundary(gam));
  EXPECT_TRUE(is_coboundary(gamma_from_character(S, Character::trivial(S, F3))));
}

TEST(Cochain, ConnectingAlphaAndEta) {
  Field F3 = Field::create(3, 1);
  AbGroup Z4({4});
  Subgroup T = Subgroup::whole(Z4);
  Subgroup K = Subgroup::generated(Z4, {2});
  auto [alpha, Q] = connecting_alpha(T, Character(K, F3, {1}));
  EXPECT_EQ(Q.Q.size(), 2);
  EXPECT_EQ(alpha(1, 1), 1);
  EXPECT_TRUE(alpha.is_cocycle() && alpha.is_symmetric());
  // η for K = Z/2, χ(a) = ω_4 in GF(9): η(a, a) = -1
  Tower T2 = Tower::create(F3, 2);
  AbGroup Z2({2});
  Subgroup S = Subgroup::whole(Z2);
  auto eta = eta_from_character(S, T2, {0, 2});
  EXPECT_EQ(eta(1, 1), 1);
  EXPECT_THROW(eta_from_character(S, T2, {0, 6}), ConstraintError);
}

TEST(Cochain, GammaClassIndependentOfLift) {
  // two extensions of χ differ by a character of G, and their γ differ by a coboundary
  for (auto [p, orders] : std::vector<std::pair<int, std::vector<int>>>{{3, {4, 2}}, {3, {2, 2, 2}}, {5, {4, 2}}, {5, {8}}}) {
    Field F = Field::create(p, 1);
    AbGroup A(orders);
    Subgroup G = Subgroup::whole(A);
    const int N = F.q() - 1;
    Subgroup GN = G.torsion(N);
    for (const Character& chi : enumerate_characters(GN, F)) {
      CharacterLift l1 = lift_character(G, chi);
      Cocycle2 g1 = gamma_from_lift(l1);
      ASSERT_TRUE(g1.is_cocycle() && g1.is_symmetric());
      // perturb the lift by a character of G trivial on G_[N]
      CharacterLift l2 = l1;
      const int o = G.basis_orders().back();
      const long step = l1.E / std::gcd(static_cast<long>(o), l1.E);
      for (int g : G.elements()) {
        const int c = G.coords(g)[G.rank() - 1];
        l2.values[G.pos(g)] = (l1.values[G.pos(g)] + step * c) % l1.E;
      }
      bool extends = true;
      for (int s : GN.elements()) extends = extends && l2(s) == chi(s) * (l1.E / N);
      if (!extends) continue;
      EXPECT_TRUE(is_coboundary(gamma_from_lift(l2).ratio(g1)));
    }
  }
}

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gdalg/classify.hpp"
#include "gdalg/galois.hpp"
#include "gdalg/samples.hpp"

using namespace gdalg;

namespace {

Algebra matrix_algebra(const Field& F, int r) {
  const int d = r * r;
  return Algebra::from_products(
      F, d,
      [&](int a, int b) {
        Vec v(d, kZero);
        if (a % r == b / r) v[(a / r) * r + b % r] = 0;
        return v;
      },
      [&] {
        Vec u(d, kZero);
        for (int i = 0; i < r; ++i) u[i * r + i] = 0;
        return u;
      }());
}

Algebra split_product(const Field& F, int k) {
  return Algebra::from_products(
      F, k, [&](int a, int b) { return a == b ? la::unit_vec(k, a) : la::zeros(k); }, Vec(k, 0));
}

GAlgebra trivial_action(const Algebra& A, const AbGroup& G) {
  Subgroup W = Subgroup::whole(G);
  return GAlgebra::create(A, W, std::vector<Matrix>(W.rank(), Matrix::identity(A.dim())));
}

GaloisParams params(const Field& F, const AbGroup& G, const Subgroup& K, const Coset& C, std::vector<int> s) {
  auto betas = enumerate_nondegenerate_alternating(K, F);
  return GaloisParams{F, G, K, C, betas.at(0), std::move(s)};
}

// C(s1, s2) over GF(3) with G = K = (Z/2)^2
GAlgebra klein_model(int s1, int s2) {
  Field F = Field::create(3, 1);
  AbGroup G({2, 2});
  Subgroup W = Subgroup::whole(G);
  return construct_simple_galois(params(F, G, W, Coset{W, 0}, {s1, s2}));
}

GAlgebra gf9_frobenius() {
  Field F = Field::create(3, 1);
  AbGroup G({2});
  Subgroup one = Subgroup::from_elements(G, {0});
  return construct_simple_galois(params(F, G, one, Coset{one, 1}, {}));
}

GdrParams gdr(const Field& F, const AbGroup& G, const Subgroup& T, const Subgroup& H, const Subgroup& K, const Coset& C,
              int chi_index = 0) {
  GdrFrame fr = gdr_frame(T, H, K, C);
  auto betas = enumerate_nondegenerate_alternating(fr.Kbar, F);
  auto chis = enumerate_characters(K.torsion(F.units()), F);
  return GdrParams{F, G, T, H, K, C, betas.at(0), chis.at(chi_index)};
}

}  // namespace

// ---------------------------------------------------------------- algebra

TEST(Algebra, TwistedGroupAlgebraGivesGF9) {
  // F[Z/2] with X^2 = -1 over GF(3) is GF(3)[x]/(x^2 + 1) = GF(9)
  Field F = Field::create(3, 1);
  Tower tw = Tower::create(F, 1);
  AbGroup G({2});
  Subgroup W = Subgroup::whole(G);
  auto tau = Cocycle2::from_function(W, tw.top(), [](int x, int y) { return x && y ? Log{1} : Log{0}; });
  GradedAlgebra A = twisted_group_algebra(tw, tau);
  EXPECT_TRUE(is_division(A.alg));
  EXPECT_TRUE(is_graded_division(A));
  auto untwisted = Cocycle2::from_function(W, tw.top(), [](int, int) { return Log{0}; });
  EXPECT_FALSE(is_division(twisted_group_algebra(tw, untwisted).alg));
}

TEST(Algebra, MatrixIdempotentAndCorner) {
  Field F = Field::create(3, 1);
  Algebra M = matrix_algebra(F, 2);
  EXPECT_EQ(center(M).size(), 1u);
  Vec e = split_primitive_idempotent(M, 7);
  EXPECT_EQ(M.mul(e, e), e);
  EXPECT_EQ(la::rank(F, M.left_mult(e)), 2);  // rank-one idempotent
  GradedAlgebra G = GradedAlgebra::create(M, AbGroup({1}), std::vector<int>(4, 0));
  EXPECT_EQ(corner(e, G).alg.alg.dim(), 1);
}

TEST(Algebra, SmashProductOfGF9) {
  GAlgebra C = gf9_frobenius();
  GradedAlgebra S = smash_group(C);
  EXPECT_EQ(S.alg.dim(), 4);
  EXPECT_TRUE(S.alg.is_associative());
  EXPECT_EQ(center(S.alg).size(), 1u);  // GF(9) # F(Z/2) = Mat_2(GF(3))
  EXPECT_TRUE(is_graded_division(S));
}

TEST(Algebra, GammaOfSmash) {
  GAlgebra C = gf9_frobenius();
  GammaResult g = gamma_of(smash_group(C));
  EXPECT_EQ(g.sub.alg.dim(), 2);
  EXPECT_TRUE(g.dual.alg.is_associative());
}

// ------------------------------------------------------------------ galois

TEST(Galois, PhiExamples) {
  Field F = Field::create(3, 1);
  GAlgebra C = gf9_frobenius();
  Matrix P = phi_matrix(C);
  EXPECT_EQ(P.rows, 4);
  EXPECT_EQ(P.cols, 4);
  EXPECT_EQ(la::rank(F, P), 4);
  GAlgebra FF = trivial_action(split_product(F, 2), AbGroup({2}));
  EXPECT_LT(la::rank(F, phi_matrix(FF)), 4);
  GAlgebra one = trivial_action(split_product(F, 1), AbGroup({1}));
  EXPECT_EQ(la::rank(F, phi_matrix(one)), 1);
}

TEST(Galois, CertificateExamples) {
  Field F = Field::create(3, 1);
  EXPECT_TRUE(is_galois_extension(gf9_frobenius()).verdict);
  auto bad = is_galois_extension(trivial_action(split_product(F, 2), AbGroup({2})));
  EXPECT_FALSE(bad.verdict);
  EXPECT_EQ(bad.reason, "fixed_subalgebra_too_big");
  auto c00 = is_galois_extension(klein_model(0, 0));
  EXPECT_TRUE(c00.verdict);
  EXPECT_EQ(c00.phi_rank, 16);
}

TEST(Galois, CriterionExamples) {
  Field F = Field::create(3, 1);
  EXPECT_TRUE(galois_criterion(gf9_frobenius()).verdict);
  EXPECT_TRUE(galois_criterion(klein_model(0, 0)).verdict);
  auto r = galois_criterion(trivial_action(split_product(F, 2), AbGroup({2})));
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(r.failed_at, 2);
  auto wrong_dim = galois_criterion(trivial_action(split_product(F, 3), AbGroup({2})));
  EXPECT_EQ(wrong_dim.failed_at, 1);
  // Mat_2(GF(2)) with trivial Klein action: conditions (1), (2) hold, (3) fails
  Field F2 = Field::create(2, 1);
  GAlgebra M = trivial_action(matrix_algebra(F2, 2), AbGroup({2, 2}));
  auto r3 = galois_criterion(M);
  EXPECT_EQ(r3.failed_at, 3);
  EXPECT_FALSE(is_galois_extension(M).verdict);
}

TEST(Galois, CriterionMatchesDefinitionOnRandomSamples) {
  std::mt19937_64 rng(11);
  int galois = 0;
  for (int i = 0; i < 120; ++i) {
    Sample s = random_galgebra(rng);
    const bool direct = is_galois_extension(s.alg).verdict;
    EXPECT_EQ(direct, galois_criterion(s.alg).verdict) << s.family;
    galois += direct;
  }
  EXPECT_GT(galois, 10);
}

TEST(Galois, OppositeClosure) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    Sample s = random_galgebra(rng);
    if (is_galois_extension(s.alg).verdict) {
      EXPECT_TRUE(is_galois_extension(opposite(s.alg)).verdict);
    }
  }
}

TEST(Galois, MiyashitaUlbrichGrading) {
  GAlgebra C = klein_model(0, 0);
  MuGrading mu = mu_grading(C, C.grp);
  for (const auto& comp : mu.comps) EXPECT_EQ(comp.size(), 1u);
  // components are the eigenspaces of the characters β(·, k)
  for (int k : C.grp.elements()) {
    const Vec& x = mu.comps[C.grp.pos(k)][0];
    for (int g : C.grp.elements()) EXPECT_TRUE(proportional(C.alg.field(), C.act(g, x), x).has_value());
  }
  EXPECT_TRUE(mu.graded.alg.is_associative());
  // commutative case: only the identity component survives
  GAlgebra L = gf9_frobenius();
  EXPECT_TRUE(mu_component(L, L.grp.basis()[0]).empty());
  EXPECT_EQ(mu_grading(L, L.grp).comps[0].size(), 2u);
  // trivial action: every component is everything
  GAlgebra FF = trivial_action(split_product(Field::create(3, 1), 2), AbGroup({2}));
  EXPECT_THROW(mu_grading(FF, FF.grp), ConstraintError);
}

TEST(Galois, Induction) {
  Field F = Field::create(3, 1);
  // T = G gives back the same dimension and stays Galois
  GAlgebra C = klein_model(1, 0);
  GAlgebra same = induce(C.grp, C);
  EXPECT_EQ(same.alg.dim(), 4);
  EXPECT_TRUE(is_galois_extension(same).verdict);
  // T = 1, C = F: (FG)* with the regular action
  AbGroup G({2, 2});
  Subgroup one = Subgroup::from_elements(G, {0});
  GAlgebra Fone = GAlgebra::create(split_product(F, 1), one, {});
  GAlgebra reg = induce(Subgroup::whole(G), Fone);
  EXPECT_EQ(reg.alg.dim(), 4);
  EXPECT_TRUE(reg.alg.is_commutative());
  EXPECT_TRUE(is_galois_extension(reg).verdict);
  // T = Z/2 in Z/4, C = GF(9)
  AbGroup Z4({4});
  Subgroup T = Subgroup::from_elements(Z4, {0, 2});
  Subgroup triv = Subgroup::from_elements(Z4, {0});
  GAlgebra L = galois_model(F, T, Coset{triv, 2}, enumerate_nondegenerate_alternating(triv, F)[0], {});
  GAlgebra ind = induce(Subgroup::whole(Z4), L);
  EXPECT_EQ(ind.alg.dim(), 4);
  EXPECT_TRUE(is_galois_extension(ind).verdict);
}

TEST(Galois, PsiRoundTripAndRootIndependence) {
  for (const char* spec : {"3:2,2", "5:4,4", "3:4,2", "5:2,2,2"}) {
    const int p = spec[0] - '0';
    std::vector<int> ord;
    for (const char* c = spec + 2; *c; ++c)
      if (*c != ',') ord.push_back(*c - '0');
    Field F = Field::create(p, 1);
    for (const GaloisParams& gp : enumerate_simple_galois(F, AbGroup(ord))) {
      GAlgebra C = construct_simple_galois(gp);
      PsiInvariant a = psi_invariant(C, gp.K, 0);
      EXPECT_EQ(a.s, gp.s) << spec;
      if (gp.K.size() > 1) EXPECT_EQ(a.beta, gp.beta.matrix());
      for (int r = 1; r < a.n; ++r) EXPECT_EQ(psi_invariant(C, gp.K, r), a) << spec;
    }
  }
  PsiInvariant l = psi_invariant(gf9_frobenius());
  EXPECT_EQ(l.n, 2);
  EXPECT_TRUE(l.s.empty());
  EXPECT_TRUE(l.beta.empty());
}

TEST(Galois, SquareKernel) {
  Field F = Field::create(5, 1);
  for (const GaloisParams& gp : enumerate_simple_galois(F, AbGroup({4, 2, 2}))) {
    PsiInvariant psi = psi_invariant(construct_simple_galois(gp));
    const int k = psi.K.size();
    int r = 1;
    while (r * r < k) ++r;
    EXPECT_EQ(r * r, k);
    EXPECT_EQ(F.units() % psi.K.exponent(), 0);
  }
}

TEST(Galois, OracleExamples) {
  GAlgebra c00 = klein_model(0, 0);
  GAlgebra c10 = klein_model(1, 0);
  EXPECT_TRUE(galois_iso_oracle(c00, c00));
  EXPECT_FALSE(galois_iso_oracle(c00, c10));
  std::mt19937_64 rng(3);
  GAlgebra scrambled = rebase(c10, detail::random_invertible(rng, c10.alg.field(), 4));
  EXPECT_TRUE(galois_iso_oracle(c10, scrambled));
  EXPECT_EQ(psi_invariant(scrambled), psi_invariant(c10));
  // μ changed by an o(a_i)-th power: same class
  Field F = Field::create(3, 1);
  AbGroup G({2, 2});
  Subgroup W = Subgroup::whole(G);
  GAlgebra shifted = galois_model(F, W, Coset{W, 0}, enumerate_nondegenerate_alternating(W, F)[0], {1 + 2, 0});
  EXPECT_TRUE(galois_iso_oracle(c10, shifted));
  EXPECT_EQ(psi_invariant(shifted), psi_invariant(c10));
}

TEST(Galois, RootsInFieldMatchTableRoots) {
  // z of degree 4 in GF(81) over GF(3), and over GF(2) for the trace branch
  for (auto [p, n] : {std::pair{3, 4}, std::pair{2, 5}, std::pair{5, 3}}) {
    Field F = Field::create(p, 1);
    AbGroup G({n});
    Subgroup one = Subgroup::from_elements(G, {0});
    GAlgebra C = galois_model(F, Subgroup::whole(G), Coset{one, 1}, enumerate_nondegenerate_alternating(one, F)[0], {});
    FieldInAlgebra Z = field_in_algebra(C.alg, center(C.alg), C.alg.unit());
    auto roots = roots_in_field(C.alg, Z, Z.minpoly, 9);
    ASSERT_EQ(static_cast<int>(roots.size()), n);
    std::set<Vec> distinct(roots.begin(), roots.end());
    EXPECT_EQ(static_cast<int>(distinct.size()), n);
    for (const Vec& r : roots) EXPECT_TRUE(la::is_zero(eval_poly(C.alg, Z.minpoly, r, C.alg.unit())));
    EXPECT_EQ(static_cast<int>(roots_in_tower(Tower::create(F, n), Z.minpoly).size()), n);
  }
  // beyond the table cap: GF(5^8) with Z/8
  Field F5 = Field::create(5, 1);
  auto list = enumerate_simple_galois(F5, AbGroup({8}));
  ASSERT_GE(list.size(), 2u);
  GAlgebra a = construct_simple_galois(list[0]), b = construct_simple_galois(list[1]);
  EXPECT_TRUE(galois_iso_oracle(a, a));
  EXPECT_FALSE(galois_iso_oracle(a, b));
}

TEST(Galois, StructureChecks) {
  Field F = Field::create(3, 1);
  // D = C(0,0) as a (Z/2)^2-graded algebra
  AbGroup V({2, 2});
  Subgroup W = Subgroup::whole(V);
  Subgroup one = Subgroup::from_elements(V, {0});
  GradedAlgebra D = construct_gdr(gdr(F, V, W, one, W, Coset{W, 0}));
  auto cr = crossed_check(D);
  EXPECT_TRUE(cr.ok) << cr.failure;
  auto gt = gtcd_check(D);
  EXPECT_TRUE(gt.ok) << gt.failure;
  EXPECT_EQ(gt.blocks, 1);
  // Mat_2(GF(3)) graded by Z/2 inside Z/4
  AbGroup Z4({4});
  Subgroup T = Subgroup::from_elements(Z4, {0, 2});
  Subgroup t1 = Subgroup::from_elements(Z4, {0});
  GradedAlgebra M = construct_gdr(gdr(F, Z4, T, t1, t1, Coset{t1, 2}));
  EXPECT_EQ(M.alg.dim(), 4);
  EXPECT_EQ(center(M.alg).size(), 1u);
  auto gm = gtcd_check(M);
  EXPECT_TRUE(gm.ok) << gm.failure;
  EXPECT_EQ(gm.blocks, 2);
  // T = 1, D = F
  GradedAlgebra Fd = construct_gdr(gdr(F, Z4, t1, t1, t1, Coset{t1, 0}));
  EXPECT_TRUE(gtcd_check(Fd).ok);
  // the corrected orientation: C ≅ Γ(C # FG) as G-algebras
  auto pp = pp5_check(gf9_frobenius());
  EXPECT_TRUE(pp.ok) << pp.failure;
  EXPECT_EQ(pp.gamma_dim, 2);
  auto pk = pp5_check(klein_model(1, 0));
  EXPECT_TRUE(pk.ok) << pk.failure;
}

// ---------------------------------------------------------------- classify

TEST(Classify, JCb) {
  Field F = Field::create(3, 1);
  AbGroup G({4, 2});
  Subgroup K = Subgroup::whole(G).torsion(2);
  Bicharacter beta = enumerate_nondegenerate_alternating(K, F).at(0);
  Coset C = make_coset(K, G.index({1, 0}));
  for (int k : K.elements()) EXPECT_EQ(jCb(C, beta, 2, k), beta(G.index({2, 0}), k));
  EXPECT_EQ(jCb(C, beta, 2, 0), 0);
  Coset trivial{K, 0};
  for (int k : K.elements()) EXPECT_EQ(jCb(trivial, beta, 1, k), 0);
}

TEST(Classify, KleinRelations) {
  Field F = Field::create(3, 1);
  for (int s1 : {0, 1}) {
    GAlgebra C = klein_model(s1, 0);
    const Algebra& A = C.alg;
    const Vec x1 = A.basis(C.grp.pos(C.grp.basis()[0]));
    const Vec x2 = A.basis(C.grp.pos(C.grp.basis()[1]));
    EXPECT_EQ(A.mul(x1, x1), A.scalar(s1 ? F.from_int(-1) : Log{0}));
    EXPECT_EQ(A.mul(x2, x2), A.unit());
    EXPECT_EQ(A.mul(x1, x2), la::scale(F, F.from_int(-1), A.mul(x2, x1)));
    EXPECT_EQ(center(A).size(), 1u);
  }
  GAlgebra L = gf9_frobenius();
  EXPECT_EQ(L.alg.dim(), 2);
  EXPECT_TRUE(is_division(L.alg));
}

TEST(Classify, GaloisCounts) {
  EXPECT_EQ(enumerate_simple_galois(Field::create(3, 1), AbGroup({2, 2})).size(), 4u);
  EXPECT_EQ(enumerate_simple_galois(Field::create(3, 1), AbGroup({2})).size(), 1u);
  EXPECT_EQ(enumerate_simple_galois(Field::create(2, 1), AbGroup({2, 2})).size(), 0u);
}

TEST(Classify, LargeFieldFallback) {
  // Z/11 over GF(3): L = GF(3^11) is beyond the table cap
  Field F = Field::create(3, 1);
  auto list = enumerate_simple_galois(F, AbGroup({11}));
  ASSERT_FALSE(list.empty());
  GAlgebra C = construct_simple_galois(list[0]);
  EXPECT_EQ(C.alg.dim(), 11);
  EXPECT_TRUE(is_galois_extension(C).verdict);
  EXPECT_TRUE(galois_criterion(C).verdict);
}

TEST(Classify, GdrOverGF3Z2) {
  Field F = Field::create(3, 1);
  AbGroup G({2});
  auto list = enumerate_gdr(F, G);
  ASSERT_EQ(list.size(), 4u);
  std::vector<long> dims;
  int division = 0;
  for (const auto& p : list) {
    GradedAlgebra D = construct_gdr(p);
    EXPECT_TRUE(is_graded_division(D));
    EXPECT_EQ(D.alg.dim(), p.dim());
    EXPECT_EQ(D.support(), p.T.elements());
    dims.push_back(D.alg.dim());
    division += is_division(D.alg);
  }
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<long>{1, 2, 2, 4}));
  EXPECT_EQ(division, 2);  // F and GF(9)
}

TEST(Classify, GdrOverGF2Z2) {
  Field F = Field::create(2, 1);
  auto list = enumerate_gdr(F, AbGroup({2}));
  EXPECT_EQ(list.size(), 3u);
  for (const auto& p : list) EXPECT_TRUE(is_graded_division(construct_gdr(p)));
}

TEST(Classify, GdrDimensionBookkeeping) {
  Field F = Field::create(3, 1);
  bool found = false;
  for (const auto& p : enumerate_gdr(F, AbGroup({4})))
    if (p.T.size() == 4 && p.K.size() == 1) {
      found = true;
      EXPECT_EQ(p.dim(), 16);
      EXPECT_TRUE(is_graded_division(construct_gdr(p)));
    }
  EXPECT_TRUE(found);
}

TEST(Classify, FineGradingOnMat2) {
  Field F = Field::create(3, 1);
  AbGroup V({2, 2});
  Subgroup W = Subgroup::whole(V);
  Subgroup one = Subgroup::from_elements(V, {0});
  GradedAlgebra D = construct_gdr(gdr(F, V, W, one, W, Coset{W, 0}));
  EXPECT_EQ(D.alg.dim(), 4);
  EXPECT_EQ(center(D.alg).size(), 1u);
  for (int g = 0; g < V.size(); ++g) EXPECT_EQ(D.component(g).size(), 1u);
}

TEST(Classify, IsoClassesNoMergingOverPrimeField) {
  Field F = Field::create(3, 1);
  AbGroup G({4, 2});
  EXPECT_EQ(gdr_iso_classes(F, G, 16).size(), enumerate_gdr(F, G, 16).size());
}

TEST(Classify, FrobeniusRescaling) {
  Field F = Field::create(3, 2);
  AbGroup G({4, 2});
  Subgroup K = Subgroup::whole(G).torsion(2);
  Bicharacter beta = enumerate_nondegenerate_alternating(K, F).at(0);
  GaloisParams gp{F, G, K, make_coset(K, G.index({1, 0})), beta, {0, 0}};
  // μ carries a nontrivial ω_L part, so Θ is not just a Frobenius on coordinates
  EXPECT_TRUE(jCb(gp.C, beta, 2, K.basis()[0]) != 0 || jCb(gp.C, beta, 2, K.basis()[1]) != 0);
  // s != 0 also needs the ω_F correction
  for (std::vector<int> s : {std::vector<int>{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
    gp.s = s;
    GAlgebra C = construct_simple_galois(gp);
    EXPECT_TRUE(is_galgebra_isomorphism(C, pull_scalars(C, -1), frobenius_rescaling(gp, 1))) << s[0] << s[1];
  }
}

#include <gtest/gtest.h>

#include <map>

#include "gdalg/gf.hpp"
#include "gdalg/linalg.hpp"
#include "gdalg/poly.hpp"

using namespace gdalg;

namespace {

// Naive polynomial arithmetic mod (p, f), used as an oracle for the tables.
struct NaiveField {
  int p;
  std::vector<int> f;
  int m() const { return static_cast<int>(f.size()) - 1; }
  std::vector<int> mulx(std::vector<int> a) const {
    const int top = a.back();
    for (int i = m() - 1; i >= 1; --i) a[i] = a[i - 1];
    a[0] = 0;
    for (int i = 0; i < m(); ++i) a[i] = ((a[i] - top * f[i]) % p + p) % p;
    return a;
  }
  std::vector<std::vector<int>> powers() const {
    const int q = static_cast<int>(detail::ipow(p, m()));
    std::vector<std::vector<int>> out;
    std::vector<int> cur(m(), 0);
    cur[0] = 1;
    for (int k = 0; k < q - 1; ++k) {
      out.push_back(cur);
      cur = mulx(cur);
    }
    return out;
  }
};

}  // namespace

TEST(Field, LeastPrimitivePolynomials) {
  // frozen from a brute-force enumeration in constant-first lexicographic order
  const std::map<std::pair<int, int>, std::vector<int>> expect{
      {{2, 1}, {1, 1}},          {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 0, 1, 1}},
      {{2, 4}, {1, 0, 0, 1, 1}}, {{2, 8}, {1, 0, 0, 0, 1, 1, 1, 0, 1}},
      {{3, 1}, {1, 1}},          {{3, 2}, {2, 1, 1}},       {{3, 3}, {1, 0, 2, 1}},
      {{3, 4}, {2, 0, 0, 1, 1}}, {{5, 1}, {2, 1}},          {{5, 2}, {2, 1, 1}},
      {{5, 3}, {2, 0, 1, 1}},    {{7, 1}, {2, 1}},          {{7, 2}, {3, 1, 1}}};
  for (const auto& [pm, f] : expect) EXPECT_EQ(Field::create(pm.first, pm.second).defpoly(), f) << pm.first << "^" << pm.second;
}

TEST(Field, CompatibleTopFields) {
  Field F5 = Field::create(5, 1);
  Field F9 = Field::create(3, 2);
  EXPECT_EQ(Field::create_compatible(2, F5).defpoly(), (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(Field::create_compatible(4, F9).defpoly(), (std::vector<int>{2, 1, 0, 0, 1}));
  EXPECT_EQ(Field::create_compatible(4, F5).defpoly(), (std::vector<int>{3, 0, 2, 2, 1}));
  EXPECT_EQ(Field::create_compatible(2, Field::create(3, 1)), F9);
}

TEST(Field, InterningAndSize) {
  EXPECT_EQ(Field::create(3, 2), Field::create(3, 2));
  EXPECT_NE(Field::create(3, 2), Field::create(3, 1));
  EXPECT_EQ(Field::create(2, 16).q(), 65536);
  try {
    Field::create(3, 11);
    FAIL();
  } catch (const ConstraintError& e) {
    EXPECT_EQ(e.reason(), "field_too_large");
  }
  EXPECT_THROW(Field::create(4, 1), ConstraintError);
}

TEST(Field, ArithmeticAgainstNaiveOracle) {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {2, 6}, {3, 1}, {3, 2}, {3, 4}, {5, 2}, {7, 2}}) {
    Field F = Field::create(p, m);
    if (F.q() > 81) continue;
    NaiveField nf{p, F.defpoly()};
    auto pw = nf.powers();
    std::map<std::vector<int>, Log> log_of;
    for (std::size_t k = 0; k < pw.size(); ++k) log_of[pw[k]] = static_cast<Log>(k);
    auto poly_of = [&](Log a) { return a < 0 ? std::vector<int>(m, 0) : pw[a]; };
    for (Log a = kZero; a < F.q() - 1; ++a)
      for (Log b = kZero; b < F.q() - 1; ++b) {
        auto pa = poly_of(a), pb = poly_of(b);
        std::vector<int> s(m);
        for (int i = 0; i < m; ++i) s[i] = (pa[i] + pb[i]) % p;
        const Log expect = std::all_of(s.begin(), s.end(), [](int v) { return v == 0; }) ? kZero : log_of.at(s);
        ASSERT_EQ(F.add(a, b), expect) << F.name() << " " << a << " " << b;
        ASSERT_EQ(F.sub(F.add(a, b), b), a);
        if (a >= 0 && b >= 0) ASSERT_EQ(F.mul(F.div(a, b), b), a);
      }
  }
}

TEST(Field, FieldAxiomsGF81) {
  Field F = Field::create(3, 4);
  for (Log a = kZero; a < F.q() - 1; a += 3)
    for (Log b = kZero; b < F.q() - 1; b += 5)
      for (Log c = kZero; c < F.q() - 1; c += 7)
        ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
  EXPECT_EQ(F.from_int(3), kZero);
  EXPECT_EQ(F.add(F.from_int(1), F.from_int(2)), kZero);
}

TEST(Field, ElementsAndOrders) {
  Field F9 = Field::create(3, 2);
  FieldElt w(F9, 1);
  EXPECT_EQ((w * w).dlog(), 2);
  // ω^2 = 2ω + 1 for x^2 + x + 2
  EXPECT_EQ(w * w, FieldElt(F9, F9.from_int(2)) * w + FieldElt::one(F9));
  EXPECT_EQ(F9.order(1), 8);
  EXPECT_EQ(F9.order(2), 4);
  EXPECT_EQ(F9.omega(4), 2);
  EXPECT_THROW(F9.omega(3), ConstraintError);
  EXPECT_THROW(FieldElt::zero(F9).inverse(), ConstraintError);
  Field F3 = Field::create(3, 1);
  EXPECT_THROW(FieldElt(F9, 1) + FieldElt(F3, 0), ConstraintError);
  EXPECT_EQ(F3.prime_value(0), 1);
  EXPECT_EQ(F3.prime_value(1), 2);
}

TEST(Field, RootSection) {
  Field F9 = Field::create(3, 2);
  EXPECT_EQ(root_section(F9, 2, 2), 1);  // ω_4 -> ω_8
  for (long N : {1, 2, 4})
    for (Log x = 0; x < 8; ++x) {
      if (8 % (F9.order(x) * N)) continue;
      const Log y = root_section(F9, N, x);
      EXPECT_EQ(F9.pow(y, N), x);
    }
  EXPECT_THROW(root_section(F9, 8, 1), ConstraintError);
}

TEST(Tower, NineOverThree) {
  Tower T = Tower::create(Field::create(3, 1), 2);
  EXPECT_EQ(T.top().defpoly(), (std::vector<int>{2, 1, 1}));
  EXPECT_EQ(T.index(), 4);
  EXPECT_EQ(T.norm(1), T.base().omega(2));
  EXPECT_EQ(T.top().pow(1, 4), T.embed(1));
}

TEST(Tower, EmbeddingIsHomomorphismAndFrobenius) {
  for (auto [p, e, n] : std::vector<std::tuple<int, int, int>>{{3, 1, 2}, {3, 1, 4}, {5, 1, 2}, {3, 2, 2}, {2, 2, 3}, {5, 1, 4}}) {
    Field F = Field::create(p, e);
    Tower T = Tower::create(F, n);
    const Field& L = T.top();
    for (Log a = kZero; a < F.q() - 1; ++a)
      for (Log b = kZero; b < F.q() - 1; ++b) {
        ASSERT_EQ(T.embed(F.add(a, b)), L.add(T.embed(a), T.embed(b)));
        ASSERT_EQ(T.embed(F.mul(a, b)), L.mul(T.embed(a), T.embed(b)));
      }
    // Frobenius^e generates Gal(L/F): fixes exactly the base
    for (Log x = kZero; x < L.q() - 1; ++x) {
      ASSERT_EQ(T.frobenius(e, x) == x, T.in_base(x));
      ASSERT_EQ(T.frobenius(e * n, x), x);
      ASSERT_EQ(T.frobenius(1, L.add(x, 0)), L.add(T.frobenius(1, x), 0));
      if (x >= 0) {
        // norm = product of conjugates
        Log prod = 0;
        for (int j = 0; j < n; ++j) prod = L.mul(prod, T.frobenius(e * j, x));
        ASSERT_EQ(prod, T.embed(T.norm(x)));
      }
      ASSERT_EQ(T.from_coords(T.coords(x)), x);
    }
  }
}

TEST(Poly, FactorAndGcd) {
  Field F3 = Field::create(3, 1);
  // x^2 + 1 irreducible, x^2 - 1 = (x-1)(x+1)
  EXPECT_TRUE(poly::is_irreducible(F3, Poly{0, kZero, 0}));
  auto fs = poly::factor(F3, Poly{F3.from_int(-1), kZero, 0});
  ASSERT_EQ(fs.size(), 2u);
  // (x+1)^3 (x^2+1)^2 over GF(3)
  Poly a{0, 0};
  Poly b{0, kZero, 0};
  Poly f = poly::mul(F3, poly::mul(F3, poly::mul(F3, a, a), a), poly::mul(F3, b, b));
  auto g = poly::factor(F3, f);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].first, a);
  EXPECT_EQ(g[0].second, 3);
  EXPECT_EQ(g[1].first, b);
  EXPECT_EQ(g[1].second, 2);
  Field F9 = Field::create(3, 2);
  // x^2 + 1 splits over GF(9)
  EXPECT_EQ(poly::factor(F9, Poly{0, kZero, 0}).size(), 2u);
  auto [d, s, t] = poly::ext_gcd(F3, f, poly::derivative(F3, f));
  EXPECT_EQ(poly::add(F3, poly::mul(F3, s, f), poly::mul(F3, t, poly::derivative(F3, f))), d);
}

TEST(Poly, IrreducibleCountOverGF2) {
  // number of monic irreducibles of degree 4 over GF(2) is 3
  Field F2 = Field::create(2, 1);
  int count = 0;
  for (int c = 0; c < 16; ++c) {
    Poly f(5, kZero);
    f[4] = 0;
    for (int i = 0; i < 4; ++i) f[i] = (c >> i) & 1 ? 0 : kZero;
    count += poly::is_irreducible(F2, f);
  }
  EXPECT_EQ(count, 3);
}

TEST(Linalg, RankKernelInverse) {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}}) {
    Field F = Field::create(p, m);
    Matrix A(3, 3);
    A(0, 0) = 0;
    A(0, 1) = 1;
    A(1, 0) = F.mul(0, F.from_int(2));
    A(1, 1) = F.mul(1, F.from_int(2));
    A(2, 2) = 0;
    EXPECT_EQ(la::rank(F, A), 2);
    auto ker = la::kernel(F, A);
    ASSERT_EQ(ker.size(), 1u);
    EXPECT_TRUE(la::is_zero(la::apply(F, A, ker[0])));
    EXPECT_FALSE(la::inverse(F, A).has_value());
    A(1, 1) = kZero;
    auto inv = la::inverse(F, A);
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(la::mul(F, A, *inv), Matrix::identity(3));
  }
}

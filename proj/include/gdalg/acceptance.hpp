/**
 * @file acceptance.hpp
 * @brief The acceptance suite: eight property and count checks with runtime
 * budgets, shared by the acceptance binary and `gdalg selftest`.
 */
#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "classify.hpp"
#include "json_io.hpp"
#include "samples.hpp"

namespace gdalg::acceptance {

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double budget = 0;
  std::string detail;
};

namespace detail {

// invariant-factor lists d1 | d2 | ... with product n (n = 1 gives the empty list)
inline void factor_lists(int rem, int prev, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (rem == 1) {
    out.push_back(cur);
    return;
  }
  for (int d = 2; d <= rem; ++d) {
    // dead ends (no later multiple of d fits) simply emit nothing
    if (rem % d || d % prev) continue;
    cur.push_back(d);
    factor_lists(rem / d, d, cur, out);
    cur.pop_back();
  }
}

inline std::vector<AbGroup> abelian_groups(int n) {
  std::vector<std::vector<int>> lists;
  std::vector<int> cur;
  factor_lists(n, 1, cur, lists);
  std::vector<AbGroup> out;
  for (auto& l : lists) out.emplace_back(l.empty() ? std::vector<int>{1} : l);
  return out;
}

inline std::vector<AbGroup> groups_up_to(int max_order) {
  std::vector<AbGroup> out;
  for (int n = 1; n <= max_order; ++n)
    for (auto& G : abelian_groups(n)) out.push_back(G);
  return out;
}

// ⟨g⟩ + K covers T
inline bool generates_mod(const Subgroup& T, const Subgroup& K, int g) {
  const AbGroup& A = T.parent();
  std::set<int> seen;
  int x = 0;
  for (int j = 0; j < T.size(); ++j, x = A.add(x, g))
    for (int k : K.elements()) seen.insert(A.add(x, k));
  return static_cast<int>(seen.size()) == T.size();
}

inline int generating_coset_count(const Subgroup& T, const Subgroup& K) {
  int c = 0;
  for (int t : T.elements()) c += generates_mod(T, K, t);
  return c / K.size();
}

// K = A x A iff every |K[m]| is a perfect square
inline bool square_torsion(const Subgroup& K) {
  const AbGroup& A = K.parent();
  for (int m = 1; m <= K.size(); ++m) {
    if (K.size() % m) continue;
    int c = 0;
    for (int k : K.elements()) c += A.times(k, m) == 0;
    int r = 0;
    while (r * r < c) ++r;
    if (r * r != c) return false;
  }
  return true;
}

// nondegenerate alternating pairings K x K -> Z/exp(K), counted by brute force
inline long count_alternating(const Subgroup& K) {
  const int r = K.rank();
  const auto& o = K.basis_orders();
  const int D = K.exponent();
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> mods;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      pairs.emplace_back(i, j);
      mods.push_back(std::gcd(o[i], o[j]));
    }
  std::vector<std::vector<int>> co;
  for (int k : K.elements()) co.emplace_back(K.coords(k), K.coords(k) + r);
  long count = 0;
  std::vector<int> e(pairs.size(), 0);
  while (true) {
    auto pair_val = [&](const std::vector<int>& x, const std::vector<int>& y) {
      long v = 0;
      for (std::size_t t = 0; t < pairs.size(); ++t) {
        const auto [i, j] = pairs[t];
        v += static_cast<long>(e[t]) * (D / mods[t]) * (x[i] * y[j] - x[j] * y[i]);
      }
      return ((v % D) + D) % D;
    };
    bool nondeg = true;
    for (std::size_t a = 1; a < co.size() && nondeg; ++a) {
      bool hit = false;
      for (std::size_t b = 0; b < co.size() && !hit; ++b) hit = pair_val(co[a], co[b]) != 0;
      nondeg = hit;
    }
    count += nondeg;
    std::size_t t = 0;
    while (t < e.size() && ++e[t] == mods[t]) e[t++] = 0;
    if (t == e.size()) break;
  }
  return count;
}

inline std::string key(const PsiInvariant& p) { return io::to_json(p).dump(); }

inline std::vector<Field> fields_up_to(int qmax) {
  std::vector<Field> out;
  for (int q = 2; q <= qmax; ++q)
    for (int p = 2; p <= q; ++p) {
      if (!gdalg::detail::is_prime(p)) continue;
      int m = 0;
      long x = 1;
      while (x < q) {
        x *= p;
        ++m;
      }
      if (x == q) out.push_back(Field::create(p, m));
      if (q % p == 0) break;
    }
  return out;
}

// Z^1 / B^1 counted by extending generator values along the Cayley graph and
// checking the cocycle identity on all pairs.
inline long brute_h1(const ActionSpec& s) {
  const Subgroup& G = s.G;
  const AbGroup& A = G.parent();
  const Field& L = s.L();
  const long Q = L.q() - 1;
  const int r = G.rank();
  std::vector<Log> v(r, 0);
  long z1 = 0;
  std::vector<long> f(A.size());
  while (true) {
    std::fill(f.begin(), f.end(), -1);
    f[0] = 0;
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t h = 0; h < queue.size() && ok; ++h) {
      const int g = queue[h];
      for (int i = 0; i < r && ok; ++i) {
        const int x = A.add(g, G.basis()[i]);
        const long val = (f[g] + s.act(g, v[i])) % Q;
        if (f[x] < 0) {
          f[x] = val;
          queue.push_back(x);
        } else {
          ok = f[x] == val;
        }
      }
    }
    for (int g : G.elements())
      for (int h : G.elements())
        if (ok) ok = f[A.add(g, h)] == (f[g] + s.act(g, static_cast<Log>(f[h]))) % Q;
    z1 += ok;
    int i = 0;
    while (i < r && ++v[i] == Q) v[i++] = 0;
    if (i == r) break;
  }
  std::set<std::vector<long>> b1;
  for (Log l = 0; l < Q; ++l) {
    std::vector<long> c;
    for (int g : G.elements()) c.push_back(((s.act(g, l) - l) % Q + Q) % Q);
    b1.insert(c);
  }
  return z1 / static_cast<long>(b1.size());
}

// polynomial arithmetic on codes, independent of the Zech tables
inline int code_add(int p, int a, int b) {
  int out = 0;
  for (int w = 1; a || b; w *= p, a /= p, b /= p) out += ((a % p + b % p) % p) * w;
  return out;
}

inline int code_mul(const Field& F, int a, int b) {
  const int p = F.p(), m = F.m();
  const auto& f = F.defpoly();
  std::vector<int> x(m), y(m), z(2 * m, 0);
  for (int i = 0; i < m; ++i, a /= p, b /= p) {
    x[i] = a % p;
    y[i] = b % p;
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
  for (int d = 2 * m - 1; d >= m; --d) {
    const int c = z[d];
    if (!c) continue;
    for (int i = 0; i <= m; ++i) z[d - m + i] = ((z[d - m + i] - c * f[i]) % p + p) % p;
  }
  int out = 0;
  for (int i = m - 1; i >= 0; --i) out = out * p + z[i];
  return out;
}

inline GdrParams gdr_params(const Field& F, const Subgroup& T, const Subgroup& H, const Subgroup& K, const Coset& C,
                            const Character& chi) {
  GdrFrame fr = gdr_frame(T, H, K, C);
  return GdrParams{F, T.parent(), T, H, K, C, enumerate_nondegenerate_alternating(fr.Kbar, F).at(0), chi};
}

struct Tally {
  int fails = 0;
  std::ostringstream first;
  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (!fails) first << what;
    ++fails;
  }
  std::string detail(const std::string& summary) const {
    return fails ? summary + "; " + std::to_string(fails) + " failure(s), first: " + first.str() : summary;
  }
};

}  // namespace detail

// 1. |K| classes per admissible (C, β); all Galois; Ψ pairwise distinct;
// pairwise non-isomorphic by the oracle for dim <= 8.
inline Result criterion_count_law() {
  using namespace detail;
  Tally t;
  long classes = 0, oracle_pairs = 0;
  for (const Field& F : {Field::create(3, 1), Field::create(5, 1)})
    for (const AbGroup& G : groups_up_to(16)) {
      const long N = F.units();
      long expected = 0;
      for (const Subgroup& K : enumerate_subgroups(G)) {
        if (!square_torsion(K) || N % K.exponent()) continue;
        const int cos = generating_coset_count(Subgroup::whole(G), K);
        if (!cos) continue;
        expected += static_cast<long>(K.size()) * cos * count_alternating(K);
      }
      const auto list = enumerate_simple_galois(F, G);
      const std::string tag = F.name() + " " + G.name();
      t.check(static_cast<long>(list.size()) == expected,
              tag + ": " + std::to_string(list.size()) + " classes, expected " + std::to_string(expected));
      std::map<std::string, int> per_cb;
      for (const auto& p : list) ++per_cb[io::to_json(p.C).dump() + io::to_json(p.beta).dump()];
      for (const auto& p : list)
        t.check(per_cb[io::to_json(p.C).dump() + io::to_json(p.beta).dump()] == p.K.size(), tag + ": count per (C,β) != |K|");
      std::vector<GAlgebra> algs;
      std::set<std::string> keys;
      for (const auto& p : list) {
        algs.push_back(construct_simple_galois(p));
        t.check(is_galois_extension(algs.back()).verdict, tag + ": representative fails the Φ test");
        keys.insert(key(psi_invariant(algs.back())));
      }
      t.check(keys.size() == list.size(), tag + ": Ψ invariants collide");
      classes += static_cast<long>(list.size());
      if (G.size() > 8) continue;
      for (std::size_t i = 0; i < algs.size(); ++i)
        for (std::size_t j = i + 1; j < algs.size(); ++j, ++oracle_pairs)
          t.check(!galois_iso_oracle(algs[i], algs[j]), tag + ": oracle finds two classes isomorphic");
    }
  return {1, "count law", t.fails == 0, 0, 60,
          t.detail(std::to_string(classes) + " classes over GF(3), GF(5), |G| <= 16; " + std::to_string(oracle_pairs) +
                   " oracle pairs")};
}

// 2. criterion verdict = definition verdict on random samples and all representatives
inline Result criterion_equivalence() {
  using namespace detail;
  Tally t;
  std::mt19937_64 rng(20240601);
  int total = 0, galois = 0;
  auto compare = [&](const GAlgebra& C, const std::string& what) {
    const bool d = is_galois_extension(C).verdict;
    t.check(d == galois_criterion(C).verdict, what);
    ++total;
    galois += d;
  };
  for (int i = 0; i < 200; ++i) {
    Sample s = random_galgebra(rng);
    compare(s.alg, "random sample " + std::to_string(i) + " (" + s.family + ")");
  }
  const int random_total = total;
  for (const Field& F : {Field::create(2, 1), Field::create(3, 1), Field::create(2, 2), Field::create(5, 1)})
    for (const AbGroup& G : groups_up_to(8))
      for (const auto& p : enumerate_simple_galois(F, G))
        compare(construct_simple_galois(p), "representative over " + F.name() + " " + G.name());
  return {2, "criterion equivalence", t.fails == 0 && random_total >= 100, 0, 30,
          t.detail(std::to_string(total) + " algebras (" + std::to_string(random_total) + " random), " +
                   std::to_string(galois) + " Galois, " + std::to_string(total - t.fails) + " agree")};
}

// 3. Ψ-equality <=> oracle isomorphism over GF(3), |G| <= 8; Ψ independent of
// the root used to identify the center.
inline Result criterion_psi_complete() {
  using namespace detail;
  Tally t;
  const Field F = Field::create(3, 1);
  std::mt19937_64 rng(77);
  long pairs = 0, corpus_size = 0, iso_pairs = 0;
  for (const AbGroup& G : groups_up_to(8)) {
    std::vector<GAlgebra> corpus;
    for (const auto& p : enumerate_simple_galois(F, G)) {
      GAlgebra C = construct_simple_galois(p);
      corpus.push_back(C);
      corpus.push_back(rebase(C, gdalg::detail::random_invertible(rng, F, C.alg.dim())));
      // μ_i shifted by an o(a_i)-th power of ω_F
      std::vector<long> e;
      for (int i = 0; i < p.K.rank(); ++i) e.push_back(p.s[i] + p.K.basis_orders()[i]);
      GAlgebra S = galois_model(F, Subgroup::whole(G), p.C, p.beta, e);
      corpus.push_back(rebase(S, gdalg::detail::random_invertible(rng, F, S.alg.dim())));
    }
    std::vector<std::string> keys;
    for (const GAlgebra& C : corpus) {
      const PsiInvariant a = psi_invariant(C);
      for (int r = 1; r < a.n; ++r)
        t.check(psi_invariant(C, std::nullopt, r) == a, G.name() + ": Ψ depends on the root choice");
      keys.push_back(key(a));
    }
    corpus_size += static_cast<long>(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i)
      for (std::size_t j = i + 1; j < corpus.size(); ++j, ++pairs) {
        const bool same = keys[i] == keys[j];
        iso_pairs += same;
        t.check(same == galois_iso_oracle(corpus[i], corpus[j]), G.name() + ": Ψ and oracle disagree");
      }
  }
  return {3, "psi complete invariant", t.fails == 0, 0, 60,
          t.detail(std::to_string(corpus_size) + " algebras, " + std::to_string(pairs) + " pairs (" +
                   std::to_string(iso_pairs) + " isomorphic)")};
}

// 4. crossed-product, GTCD and corrected PP5 maps as exact checks
inline Result criterion_structure() {
  using namespace detail;
  Tally t;
  const Field F = Field::create(3, 1);
  std::ostringstream info;
  AbGroup V({2, 2});
  Subgroup W = Subgroup::whole(V), one = Subgroup::from_elements(V, {0});
  GradedAlgebra D = construct_gdr(gdr_params(F, W, one, W, Coset{W, 0}, Character::trivial(W.torsion(2), F)));
  auto c1 = crossed_check(D);
  t.check(c1.ok, "C(0,0) crossed: " + c1.failure);
  auto g1 = gtcd_check(D);
  t.check(g1.ok, "C(0,0) GTCD: " + g1.failure);
  info << "C(0,0): GTCD blocks " << g1.blocks;
  AbGroup Z4({4});
  Subgroup T = Subgroup::from_elements(Z4, {0, 2}), e = Subgroup::from_elements(Z4, {0});
  GradedAlgebra M = construct_gdr(gdr_params(F, T, e, e, Coset{e, 2}, Character::trivial(e, F)));
  t.check(M.alg.dim() == 4 && center(M.alg).size() == 1, "Galois-graded Mat2 has the wrong shape");
  // crossed product over its support T = Z/2
  std::vector<int> deg;
  for (int g : M.deg) deg.push_back(g / 2);
  auto c2 = crossed_check(GradedAlgebra::create(M.alg, AbGroup({2}), deg));
  t.check(c2.ok, "Mat2 crossed: " + c2.failure);
  auto g2 = gtcd_check(M);
  t.check(g2.ok, "Mat2 GTCD: " + g2.failure);
  info << ", Mat2 in Z/4: GTCD blocks " << g2.blocks;
  AbGroup Z2({2});
  Subgroup z1 = Subgroup::from_elements(Z2, {0});
  GAlgebra L = construct_simple_galois(GaloisParams{F, Z2, z1, Coset{z1, 1}, enumerate_nondegenerate_alternating(z1, F).at(0), {}});
  auto pp = pp5_check(L);
  t.check(pp.ok, "GF(9) PP5: " + pp.failure);
  info << ", GF(9): C ≅ Γ(C # FG) with Γ of dim " << pp.gamma_dim;
  return {4, "structure theorems", t.fails == 0, 0, 30, t.detail(info.str())};
}

// 5. |H^1(G, L^x)| by brute force against |Hom(K, F^x)| (= |K| when exp(K) | |F^x|)
inline Result criterion_cohomology() {
  using namespace detail;
  Tally t;
  long specs = 0, with_roots = 0;
  for (const Field& F : fields_up_to(81))
    for (const AbGroup& A : groups_up_to(8)) {
      const Subgroup G = Subgroup::whole(A);
      for (const Subgroup& K : enumerate_subgroups(A)) {
        const int n = G.size() / K.size();
        if (gdalg::detail::ipow(F.q(), n) > 81) continue;
        for (const Coset& C : generating_cosets(G, K)) {
          const ActionSpec s = ActionSpec::create(Tower::create(F, n), G, C);
          long hom = 1;
          for (int o : K.basis_orders()) hom *= std::gcd(o, F.units());
          const long b = brute_h1(s);
          const std::string tag = F.name() + " " + A.name() + " |K|=" + std::to_string(K.size());
          t.check(b == hom, tag + ": brute force " + std::to_string(b) + " vs |Hom(K,F^x)| " + std::to_string(hom));
          t.check(h1(s).size() == b, tag + ": library h1 differs from brute force");
          if (F.units() % K.exponent() == 0) {
            t.check(b == K.size(), tag + ": |H^1| != |K|");
            ++with_roots;
          }
          ++specs;
        }
      }
    }
  const Field F3 = Field::create(3, 1);
  const Tower T2 = Tower::create(F3, 2);
  AbGroup Z4({4}), Z2({2});
  const long a = brute_h1(ActionSpec::create(T2, Subgroup::whole(Z4), make_coset(Subgroup::generated(Z4, {2}), 1)));
  const long b = brute_h1(ActionSpec::create(T2, Subgroup::whole(Z2), make_coset(Subgroup::generated(Z2, {}), 1)));
  t.check(a == 2, "|H^1(Z/4, GF(9)^x)| = " + std::to_string(a));
  t.check(b == 1, "|H^1(Z/2, GF(9)^x)| = " + std::to_string(b));
  return {5, "cohomology sizes", t.fails == 0, 0, 30,
          t.detail(std::to_string(specs) + " action specs (" + std::to_string(with_roots) +
                   " with exp(K) | |F^x|); Z/4 on GF(9): " + std::to_string(a) + ", Z/2 on GF(9): " + std::to_string(b))};
}

// 6. graded-division classification over GF(3)
inline Result criterion_gdr() {
  using namespace detail;
  Tally t;
  const Field F = Field::create(3, 1);
  std::ostringstream info;
  long oracle_pairs = 0;
  for (const AbGroup& G : {AbGroup({2}), AbGroup({4}), AbGroup({2, 2}), AbGroup({4, 2})}) {
    // quintuple count from the constraints alone (|F^x| = 2: K/H trivial or (Z/2)^2, one β̄)
    long expected = 0;
    const auto subs = enumerate_subgroups(G);
    for (const Subgroup& T : subs)
      for (const Subgroup& K : subs) {
        if (!K.is_subset_of(T)) continue;
        const int cos = generating_coset_count(T, K);
        int k2 = 0;
        for (int k : K.elements()) k2 += G.times(k, 2) == 0;
        for (const Subgroup& H : subs) {
          if (!H.is_subset_of(K)) continue;
          const int kbar = K.size() / H.size();
          bool twoK_in_H = true;
          for (int k : K.elements()) twoK_in_H = twoK_in_H && H.contains(G.times(k, 2));
          if (kbar == 1 || (kbar == 4 && twoK_in_H)) expected += static_cast<long>(cos) * k2;
        }
      }
    const auto list = enumerate_gdr(F, G);
    const std::string tag = G.name();
    t.check(static_cast<long>(list.size()) == expected,
            tag + ": " + std::to_string(list.size()) + " quintuples, expected " + std::to_string(expected));
    if (G == AbGroup({2})) t.check(list.size() == 4, "Z/2 does not give 4 classes");
    t.check(gdr_iso_classes(F, G).size() == list.size(), tag + ": prime field merged classes");
    std::vector<GradedAlgebra> algs;
    std::vector<GdrInvariant> inv;
    for (const auto& p : list) {
      GradedAlgebra D = construct_gdr(p);
      const auto rep = graded_division_report(D);
      t.check(rep.ok, tag + ": not graded-division (" + rep.reason + ")");
      if (!rep.ok) continue;
      t.check(D.alg.dim() == p.dim(), tag + ": dimension differs from |T|[T:K]");
      GdrInvariant v = gdr_invariant(D);
      t.check(v.support == p.T.elements(), tag + ": support differs from T");
      t.check(v.center_support == p.H.elements(), tag + ": center support differs from H");
      t.check(v.graded_central, tag + ": Z(D) ∩ D_e is bigger than F");
      t.check(v.kernel == p.K.elements() && v.frob_coset == p.C.elements(), tag + ": K or C not recovered");
      if (p.H.size() == 1) {
        auto g = gtcd_check(D);
        t.check(g.ok, tag + ": GTCD fails: " + g.failure);
      }
      if (D.alg.dim() <= 16) t.check(graded_iso_oracle(D, construct_gdr(p, 1)), tag + ": idempotent choice matters");
      algs.push_back(std::move(D));
      inv.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < algs.size(); ++i)
      for (std::size_t j = i + 1; j < algs.size(); ++j) {
        if (!(inv[i] == inv[j])) continue;
        const bool small = algs[i].alg.dim() <= 16;
        t.check(small, tag + ": equal invariants above the oracle range");
        if (!small) continue;
        ++oracle_pairs;
        t.check(!graded_iso_oracle(algs[i], algs[j]), tag + ": distinct quintuples give isomorphic algebras");
      }
    info << tag << ": " << list.size() << (G == AbGroup({4, 2}) ? "" : ", ");
  }
  info << " quintuples; " << oracle_pairs << " invariant ties separated by the oracle";
  return {6, "graded-division classification", t.fails == 0, 0, 300, t.detail(info.str())};
}

// 7. Frobenius twist over GF(9)
inline Result criterion_frobenius_twist() {
  using namespace detail;
  Tally t;
  const Field F = Field::create(3, 2);
  AbGroup G({4, 2});
  const Subgroup W = Subgroup::whole(G);
  const Subgroup K2 = W.torsion(2);
  const Coset C = make_coset(K2, G.index({1, 0}));
  const Bicharacter beta = enumerate_nondegenerate_alternating(K2, F).at(0);
  const int e0 = base_subfield_degree(F, 2);
  t.check(e0 == 1 && beta.frobenius(e0) == beta, "β is not Frobenius-fixed");
  // explicit rescaling on the Galois level
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) {
      GaloisParams gp{F, G, K2, C, beta, {s1, s2}};
      GAlgebra Cs = construct_simple_galois(gp);
      t.check(is_galgebra_isomorphism(Cs, pull_scalars(Cs, -e0), frobenius_rescaling(gp, e0)),
              "rescaling is not an isomorphism for s = (" + std::to_string(s1) + "," + std::to_string(s2) + ")");
    }
  // the φ-pullback of D(χ) with T = Z/4 x Z/2, K = T_[2], H = 1
  const Subgroup one = Subgroup::from_elements(G, {0});
  int pulled = 0;
  for (const Character& chi : enumerate_characters(K2.torsion(F.units()), F)) {
    GradedAlgebra D = construct_gdr(gdr_params(F, W, one, K2, C, chi));
    t.check(graded_iso_oracle(pull_scalars(D, -e0), D), "φ-pullback of D(χ) is not isomorphic to D(χ)");
    ++pulled;
  }
  // merging with T = K = Z/4 x Z/2, H = <(2,0)>: χ ~ φ∘χ
  const Subgroup H = Subgroup::generated(G, {G.index({2, 0})});
  const Coset CK{W, 0};
  const auto chis = enumerate_characters(W.torsion(F.units()), F);
  std::vector<GradedAlgebra> Ds;
  for (const auto& chi : chis) Ds.push_back(construct_gdr(gdr_params(F, W, H, W, CK, chi)));
  int classes = 0, covered = 0;
  for (const auto& c : gdr_iso_classes(F, G))
    if (c.rep.T == W && c.rep.K == W && c.rep.H == H) {
      ++classes;
      for (const auto& b : c.orbit) {
        ++covered;
        t.check(character_values(b) == character_values(c.rep.chi) ||
                    character_values(b) == character_values(frobenius(c.rep.chi, e0)),
                "orbit is not a Frobenius orbit");
      }
    }
  t.check(covered == static_cast<int>(chis.size()), "orbits do not partition the characters");
  t.check(classes == 6, "expected 6 χ-orbits, got " + std::to_string(classes));
  for (std::size_t i = 0; i < chis.size(); ++i)
    for (std::size_t j = 0; j < chis.size(); ++j) {
      const bool merged = character_values(frobenius(chis[i], e0)) == character_values(chis[j]) ||
                          character_values(chis[i]) == character_values(chis[j]);
      bool ring_iso = false;
      for (int k = 0; k < F.m() && !ring_iso; ++k) ring_iso = graded_iso_oracle(pull_scalars(Ds[i], -k), Ds[j]);
      t.check(merged == ring_iso, "merging disagrees with graded-ring isomorphism for χ pair " + std::to_string(i) + "," +
                                      std::to_string(j));
      if (merged) t.check(graded_iso_oracle(pull_scalars(Ds[i], -e0), Ds[j]) || i == j, "pullback is not D(φ∘χ)");
    }
  return {7, "Frobenius twist", t.fails == 0, 0, 120,
          t.detail("rescaling checked for 4 s-vectors, " + std::to_string(pulled) + " pullbacks, " +
                   std::to_string(chis.size()) + " characters in " + std::to_string(classes) + " orbits")};
}

// 8. field and group kernel sanity
inline Result criterion_kernel() {
  using namespace detail;
  Tally t;
  long checks = 0;
  for (const Field& F : fields_up_to(81)) {
    const int q = F.q();
    // Zech addition and dlog multiplication against polynomial arithmetic
    for (Log a = -1; a < q - 1; ++a)
      for (Log b = -1; b < q - 1; ++b, ++checks) {
        t.check(F.code(F.add(a, b)) == code_add(F.p(), F.code(a), F.code(b)), F.name() + ": Zech addition");
        t.check(F.code(F.mul(a, b)) == code_mul(F, F.code(a), F.code(b)), F.name() + ": multiplication");
      }
    const long N = F.units();
    for (long M = 1; M <= N; ++M) {
      if (N % M) continue;
      for (long d = 1; d <= M; ++d)
        if (M % d == 0) t.check(F.pow(F.omega(M), d) == F.omega(M / d), F.name() + ": ω_N^d != ω_{N/d}");
      // [1/M] section: s(x)^M = x wherever the roots exist
      for (Log x = 0; x < N; ++x)
        if (N % (F.order(x) * M) == 0) t.check(F.pow(root_section(F, M, x), M) == x, F.name() + ": root section");
    }
    // towers inside the 81-element bound
    for (int n = 2; gdalg::detail::ipow(q, n) <= 81; ++n) {
      const Tower tw = Tower::create(F, n);
      const Field& L = tw.top();
      for (Log a = -1; a < q - 1; ++a)
        for (Log b = -1; b < q - 1; ++b) {
          t.check(tw.embed(F.add(a, b)) == L.add(tw.embed(a), tw.embed(b)), "embedding is not additive");
          t.check(tw.embed(F.mul(a, b)) == L.mul(tw.embed(a), tw.embed(b)), "embedding is not multiplicative");
        }
      t.check(tw.norm(1) == F.omega(F.units()), "norm(ω_L) != ω_F");
      for (Log x = -1; x < L.q() - 1; ++x) {
        t.check(tw.from_coords(tw.coords(x)) == x, "tower coordinates do not round-trip");
        t.check(L.frob(x, static_cast<long>(F.m()) * n) == x, "Frobenius order exceeds [L:F_p]");
        t.check(tw.in_base(x) == (L.frob(x, F.m()) == x), "Frobenius fixed field is not F");
        if (x >= 0) t.check(tw.embed(tw.norm(x)) == L.pow(x, tw.index()), "norm is not x^index");
        for (Log y = 0; y < L.q() - 1 && x >= 0; y += 7)
          t.check(tw.norm(L.mul(x, y)) == F.mul(tw.norm(x), tw.norm(y)), "norm is not multiplicative");
      }
    }
  }
  // subgroup counts against closed subsets
  for (const auto& [ord, want] : std::vector<std::pair<std::vector<int>, int>>{{{2, 2, 2}, 16}, {{3, 3}, 6}}) {
    AbGroup G(ord);
    int closed = 0;
    for (int mask = 1; mask < (1 << G.size()); ++mask) {
      if (!(mask & 1)) continue;
      bool ok = true;
      for (int a = 0; a < G.size() && ok; ++a)
        for (int b = 0; b < G.size() && ok; ++b)
          if ((mask >> a & 1) && (mask >> b & 1)) ok = mask >> G.add(a, b) & 1;
      closed += ok;
    }
    const int got = static_cast<int>(enumerate_subgroups(G).size());
    t.check(got == want && closed == want, G.name() + ": " + std::to_string(got) + " subgroups, " +
                                               std::to_string(closed) + " closed subsets, expected " + std::to_string(want));
  }
  return {8, "kernel sanity", t.fails == 0, 0, 10,
          t.detail(std::to_string(checks) + " field operation pairs; subgroup counts 16 and 6")};
}

inline std::vector<std::function<Result()>> all_criteria() {
  return {criterion_count_law,  criterion_equivalence, criterion_psi_complete,    criterion_structure,
          criterion_cohomology, criterion_gdr,         criterion_frobenius_twist, criterion_kernel};
}

// Runs the selected criteria (all when empty). Exceptions count as failures;
// a criterion over its time budget fails.
inline std::vector<Result> run(const std::vector<int>& which = {}) {
  std::vector<Result> out;
  const auto crit = all_criteria();
  for (int i = 1; i <= static_cast<int>(crit.size()); ++i) {
    if (!which.empty() && std::find(which.begin(), which.end(), i) == which.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = crit[i - 1]();
    } catch (const std::exception& e) {
      r = Result{i, "criterion " + std::to_string(i), false, 0, 0, std::string("exception: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.budget > 0 && r.seconds > r.budget) {
      r.pass = false;
      r.detail += "; over the time budget";
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string format(const Result& r) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(2);
  o << "criterion " << r.id << " [" << r.name << "]: " << (r.pass ? "PASS" : "FAIL") << " (" << r.seconds << " s, budget "
    << r.budget << " s) " << r.detail;
  return o.str();
}

}  // namespace gdalg::acceptance

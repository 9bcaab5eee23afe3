/**
 * @file json_io.hpp
 * @brief JSON encodings of fields, groups, algebras, invariants and
 * classification parameters.
 *
 * Field elements are written as discrete logs with -1 for zero. Group
 * elements are coordinate tuples in the ambient cyclic-factor presentation.
 */
#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "classify.hpp"

namespace gdalg::io {

using json = nlohmann::ordered_json;

inline json to_json(const Field& F) { return {{"p", F.p()}, {"m", F.m()}, {"defpoly", F.defpoly()}}; }

inline Field field_from_json(const json& j) {
  require(j.is_object() && j.contains("p") && j.contains("m"), "bad_json", "field needs p and m");
  if (j.contains("defpoly")) return Field::from_defpoly(j.at("p").get<int>(), j.at("defpoly").get<std::vector<int>>());
  return Field::create(j.at("p").get<int>(), j.at("m").get<int>());
}

inline json to_json(const AbGroup& G) { return {{"orders", G.orders()}}; }

inline AbGroup group_from_json(const json& j) {
  require(j.is_object() && j.contains("orders"), "bad_json", "group needs orders");
  return AbGroup(j.at("orders").get<std::vector<int>>());
}

inline json element(const AbGroup& G, int e) { return G.tuple(e); }

inline int element_from_json(const AbGroup& G, const json& j) { return G.index(j.get<std::vector<int>>()); }

inline json to_json(const Subgroup& H) {
  json gens = json::array();
  for (int b : H.basis()) gens.push_back(element(H.parent(), b));
  return {{"gens", gens}, {"orders", H.basis_orders()}};
}

inline Subgroup subgroup_from_json(const AbGroup& G, const json& j) {
  std::vector<int> gens;
  for (const auto& g : j.at("gens")) gens.push_back(element_from_json(G, g));
  return Subgroup::with_basis(G, gens);
}

inline json to_json(const Coset& C) { return {{"subgroup", to_json(C.K)}, {"rep", element(C.K.parent(), C.rep)}}; }

inline json to_json(const Bicharacter& b) {
  json gens = json::array();
  for (int g : b.domain().basis()) gens.push_back(element(b.domain().parent(), g));
  return {{"gens", gens}, {"matrix_dlogs", b.matrix()}};
}

inline json to_json(const Character& c) {
  json gens = json::array();
  for (int g : c.domain().basis()) gens.push_back(element(c.domain().parent(), g));
  return {{"gens", gens}, {"values_dlogs", character_values(c)}};
}

inline json to_json(const Matrix& M) {
  json rows = json::array();
  for (int r = 0; r < M.rows; ++r) {
    std::vector<Log> row(M.cols);
    for (int c = 0; c < M.cols; ++c) row[c] = M(r, c);
    rows.push_back(row);
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j, int d) {
  require(j.is_array() && static_cast<int>(j.size()) == d, "bad_json", "matrix has the wrong number of rows");
  Matrix M(d, d);
  for (int r = 0; r < d; ++r) {
    auto row = j[r].get<std::vector<Log>>();
    require(static_cast<int>(row.size()) == d, "bad_json", "matrix row has the wrong length");
    for (int c = 0; c < d; ++c) M(r, c) = row[c];
  }
  return M;
}

// {"field", "dim", "unit", "sc": [[i, j, k, dlog], ...]} with zero entries omitted
inline json to_json(const Algebra& A) {
  json sc = json::array();
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j)
      for (const Term& t : A.product(i, j)) sc.push_back({i, j, t.k, t.c});
  return {{"field", to_json(A.field())}, {"dim", A.dim()}, {"unit", A.unit()}, {"sc", sc}};
}

inline json to_json(const GradedAlgebra& A) {
  json j = to_json(A.alg);
  json deg = json::array();
  for (int g : A.deg) deg.push_back(element(A.grp, g));
  j["grading"] = {{"group", to_json(A.grp)}, {"deg", deg}};
  return j;
}

inline json to_json(const GAlgebra& C) {
  json j = to_json(C.alg);
  json gens = json::array();
  for (const Matrix& M : C.gen_mats()) gens.push_back(to_json(M));
  j["action"] = {{"group", to_json(C.grp.parent())}, {"subgroup", to_json(C.grp)}, {"gens", gens}};
  return j;
}

struct ParsedAlgebra {
  Algebra alg;
  std::optional<GradedAlgebra> graded;
  std::optional<GAlgebra> galg;
};

inline ParsedAlgebra algebra_from_json(const json& j) {
  require(j.is_object() && j.contains("field") && j.contains("dim") && j.contains("sc") && j.contains("unit"), "bad_json",
          "algebra needs field, dim, unit and sc");
  const Field F = field_from_json(j.at("field"));
  const int d = j.at("dim").get<int>();
  require(d >= 1 && d <= 1024, "bad_json", "dimension out of range");
  std::vector<std::vector<Term>> table(static_cast<std::size_t>(d) * d);
  for (const auto& e : j.at("sc")) {
    auto v = e.get<std::vector<long>>();
    require(v.size() == 4, "bad_json", "structure constants are [i, j, k, dlog]");
    require(v[0] >= 0 && v[0] < d && v[1] >= 0 && v[1] < d && v[2] >= 0 && v[2] < d, "bad_json", "index out of range");
    require(v[3] >= -1 && v[3] < F.q() - 1, "bad_json", "dlog out of range");
    if (v[3] < 0) continue;
    table[v[0] * d + v[1]].push_back({static_cast<int>(v[2]), static_cast<Log>(v[3])});
  }
  auto unit = j.at("unit").get<Vec>();
  ParsedAlgebra out{Algebra(F, d, std::move(table), std::move(unit)), std::nullopt, std::nullopt};
  if (j.contains("grading")) {
    const json& g = j.at("grading");
    AbGroup G = group_from_json(g.at("group"));
    std::vector<int> deg;
    for (const auto& t : g.at("deg")) deg.push_back(element_from_json(G, t));
    out.graded = GradedAlgebra::create(out.alg, G, deg);
  }
  if (j.contains("action")) {
    const json& a = j.at("action");
    AbGroup G = group_from_json(a.at("group"));
    Subgroup S = a.contains("subgroup") ? subgroup_from_json(G, a.at("subgroup")) : Subgroup::whole(G);
    std::vector<Matrix> mats;
    for (const auto& m : a.at("gens")) mats.push_back(matrix_from_json(m, d));
    out.galg = GAlgebra::create(out.alg, S, mats);
  }
  return out;
}

inline json to_json(const PsiInvariant& p) {
  return {{"n", p.n}, {"theta_gen_images", p.theta}, {"K", to_json(p.K)}, {"beta_matrix_dlogs", p.beta}, {"s", p.s}};
}

inline json to_json(const GaloisCertificate& c) {
  json j = {{"verdict", c.verdict}, {"phi_rank", c.phi_rank}, {"fixed_dim", c.fixed_dim}, {"faithful", c.faithful}};
  if (!c.verdict) j["reason"] = c.reason;
  return j;
}

inline json to_json(const CriterionReport& r) {
  json j = {{"verdict", r.verdict}};
  if (!r.verdict) {
    j["failed_condition"] = r.failed_at;
    j["detail"] = r.detail;
  }
  return j;
}

inline json to_json(const GaloisParams& p) {
  return {{"field", to_json(p.F)}, {"group", to_json(p.G)}, {"K", to_json(p.K)},
          {"coset", to_json(p.C)}, {"beta", to_json(p.beta)}, {"s", p.s}};
}

inline json to_json(const GdrParams& p) {
  return {{"field", to_json(p.F)}, {"group", to_json(p.G)}, {"T", to_json(p.T)}, {"H", to_json(p.H)},
          {"K", to_json(p.K)},     {"coset", to_json(p.C)}, {"beta", to_json(p.beta)}, {"chi", to_json(p.chi)}};
}

inline json to_json(const GdrInvariant& v) {
  return {{"support", v.support},     {"center_support", v.center_support}, {"graded_central", v.graded_central},
          {"identity_dim", v.de_dim}, {"kernel", v.kernel},                 {"frobenius_coset", v.frob_coset},
          {"central_classes", v.central_classes}};
}

}  // namespace gdalg::io

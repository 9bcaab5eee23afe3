// gdalg: enumerate, construct, verify and fingerprint graded-division algebras
// and Galois extensions over finite fields. Output is JSON; exit 2 on
// constraint violations, 1 on internal errors.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "gdalg/acceptance.hpp"
#include "gdalg/json_io.hpp"

using namespace gdalg;
using io::json;

namespace {

struct Options {
  std::string field, group, subgroup, support, center, coset, beta, s, chi, input, out;
  long dim_cap = kGdrDimCap;
  unsigned long long seed = 0;
  bool emit_algebras = false;
  std::vector<int> criteria;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

long parse_int(const std::string& s, const char* what) {
  static const std::regex re(R"(\s*-?\d+\s*)");
  require(std::regex_match(s, re), "parse_error", std::string("expected an integer in ") + what + ": '" + s + "'");
  return std::stol(s);
}

std::vector<long> parse_list(const std::string& s, const char* what) {
  std::vector<long> v;
  if (s.empty()) return v;
  for (const auto& t : split(s, ',')) v.push_back(parse_int(t, what));
  return v;
}

Field parse_field(const std::string& s) {
  require(!s.empty(), "parse_error", "--field is required");
  static const std::regex re(R"((\d+)(?:\^(\d+))?)");
  std::smatch m;
  require(std::regex_match(s, m, re), "parse_error", "field spec must be p^e");
  const int p = std::stoi(m[1]);
  const int e = m[2].matched ? std::stoi(m[2]) : 1;
  return Field::create(p, e);
}

AbGroup parse_group(const std::string& s) {
  require(!s.empty(), "parse_error", "--group is required");
  std::vector<int> orders;
  for (const auto& t : split(s, 'x')) {
    const long d = parse_int(t, "group spec");
    require(d >= 1, "parse_error", "cyclic factors must have positive order");
    orders.push_back(static_cast<int>(d));
  }
  require(!orders.empty(), "parse_error", "group spec must be d1xd2x...");
  return AbGroup(orders);
}

int parse_element(const AbGroup& G, std::string t) {
  t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
  require(t.size() >= 2 && t.front() == '(' && t.back() == ')', "parse_error", "group elements are written (a,b,...)");
  auto v = parse_list(t.substr(1, t.size() - 2), "group element");
  require(static_cast<int>(v.size()) == G.rank(), "parse_error", "element tuple has the wrong length");
  std::vector<int> c;
  for (int i = 0; i < G.rank(); ++i) c.push_back(static_cast<int>(((v[i] % G.orders()[i]) + G.orders()[i]) % G.orders()[i]));
  return G.index(c);
}

std::vector<int> parse_elements(const AbGroup& G, const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split(s, ';'))
    if (!t.empty()) out.push_back(parse_element(G, t));
  return out;
}

// generator list, used as the basis (so s and β refer to it); empty means trivial
Subgroup parse_subgroup(const AbGroup& G, const std::string& s, const Subgroup& fallback) {
  if (s.empty()) return fallback;
  std::vector<int> gens;
  for (int g : parse_elements(G, s))
    if (g != 0) gens.push_back(g);
  return Subgroup::with_basis(G, gens);
}

std::vector<std::vector<Log>> parse_matrix(const std::string& s, int d) {
  std::vector<std::vector<Log>> m;
  for (const auto& row : split(s, ';')) {
    std::vector<Log> r;
    for (long x : parse_list(row, "--beta")) r.push_back(static_cast<Log>(x));
    require(static_cast<int>(r.size()) == d, "parse_error", "--beta rows must have one entry per generator");
    m.push_back(r);
  }
  require(static_cast<int>(m.size()) == d, "parse_error", "--beta must have one row per generator");
  return m;
}

Coset pick_coset(const Subgroup& T, const Subgroup& K, const AbGroup& G, const std::string& spec) {
  if (!spec.empty()) {
    auto e = parse_elements(G, spec);
    require(e.size() == 1, "parse_error", "--coset takes one representative");
    return make_coset(K, e[0]);
  }
  auto cs = generating_cosets(T, K);
  require(!cs.empty(), "not_generating", "no coset of K generates the quotient");
  return cs.front();
}

Bicharacter pick_beta(const Subgroup& K, const Field& F, const std::string& spec) {
  if (!spec.empty()) return Bicharacter(K, F, parse_matrix(spec, K.rank()));
  auto bs = enumerate_nondegenerate_alternating(K, F);
  require(!bs.empty(), "degenerate_bicharacter", "K carries no nondegenerate alternating bicharacter over F");
  return bs.front();
}

json galois_entry(const GaloisParams& p, bool emit, unsigned long long seed) {
  GAlgebra C = construct_simple_galois(p);
  json e = {{"params", io::to_json(p)}, {"dim", C.alg.dim()}};
  if (emit) e["algebra"] = io::to_json(C);
  e["psi"] = io::to_json(psi_invariant(C, p.K, 0, seed));
  e["verified"] = {{"galois", is_galois_extension(C).verdict}, {"criterion", galois_criterion(C, seed).verdict}};
  return e;
}

json gdr_entry(const GdrParams& p, bool emit, bool full, unsigned long long seed) {
  GradedAlgebra D = construct_gdr(p, seed);
  json e = {{"params", io::to_json(p)}, {"dim", D.alg.dim()}};
  if (emit) e["algebra"] = io::to_json(D);
  e["invariant"] = io::to_json(gdr_invariant(D, seed));
  const bool gd = is_graded_division(D);
  e["verified"] = {{"graded_division", gd}};
  if (full) e["verified"]["gtcd"] = gd && gtcd_check(D).ok;
  return e;
}

json enumerate_galois(const Options& o) {
  const Field F = parse_field(o.field);
  const AbGroup G = parse_group(o.group);
  json classes = json::array();
  for (const auto& p : enumerate_simple_galois(F, G)) classes.push_back(galois_entry(p, o.emit_algebras, o.seed));
  return {{"field", io::to_json(F)}, {"group", io::to_json(G)}, {"count", classes.size()}, {"classes", classes}};
}

json enumerate_gdr_cmd(const Options& o) {
  const Field F = parse_field(o.field);
  const AbGroup G = parse_group(o.group);
  json classes = json::array();
  for (const auto& c : gdr_iso_classes(F, G, o.dim_cap)) {
    json e = gdr_entry(c.rep, o.emit_algebras, false, o.seed);
    json orbit = json::array();
    for (const auto& chi : c.orbit) orbit.push_back(io::to_json(chi));
    e["chi_orbit"] = orbit;
    classes.push_back(e);
  }
  return {{"field", io::to_json(F)},
          {"group", io::to_json(G)},
          {"dim_cap", o.dim_cap},
          {"count", classes.size()},
          {"classes", classes}};
}

// Galois extension by default; graded-division algebra when --support is given.
json construct_cmd(const Options& o) {
  const Field F = parse_field(o.field);
  const AbGroup G = parse_group(o.group);
  const Subgroup W = Subgroup::whole(G);
  if (o.support.empty()) {
    const Subgroup K = parse_subgroup(G, o.subgroup, W);
    std::vector<int> s(K.rank(), 0);
    if (!o.s.empty()) {
      auto v = parse_list(o.s, "--s");
      require(static_cast<int>(v.size()) == K.rank(), "bad_params", "--s needs one entry per generator of K");
      s.assign(v.begin(), v.end());
    }
    GaloisParams p{F, G, K, pick_coset(W, K, G, o.coset), pick_beta(K, F, o.beta), s};
    return galois_entry(p, true, o.seed);
  }
  const Subgroup T = parse_subgroup(G, o.support, W);
  const Subgroup trivial = Subgroup::with_basis(G, {});
  const Subgroup K = parse_subgroup(G, o.subgroup, T);
  const Subgroup H = parse_subgroup(G, o.center, trivial);
  require(K.is_subset_of(T) && H.is_subset_of(K) && T.is_subset_of(W), "bad_params", "need H <= K <= T");
  const Coset C = pick_coset(T, K, G, o.coset);
  GdrFrame fr = gdr_frame(T, H, K, C);
  require(is_hyperbolic(fr.Kbar), "not_hyperbolic", "K/H must be of the form A x A");
  const Bicharacter beta = pick_beta(fr.Kbar, F, o.beta);
  const Subgroup KN = K.torsion(F.units());
  std::vector<Log> chi(KN.rank(), 0);
  if (!o.chi.empty()) {
    auto v = parse_list(o.chi, "--chi");
    require(static_cast<int>(v.size()) == KN.rank(), "bad_params", "--chi needs one dlog per generator of K_[|F^x|]");
    chi.assign(v.begin(), v.end());
  }
  GdrParams p{F, G, T, H, K, C, beta, Character(KN, F, chi)};
  return gdr_entry(p, true, true, o.seed);
}

json read_input(const std::string& path) {
  require(!path.empty(), "parse_error", "--input is required");
  std::ifstream in(path);
  require(in.good(), "io_error", "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConstraintError("parse_error", e.what());
  }
}

io::ParsedAlgebra parse_algebra(const json& j) {
  try {
    return io::algebra_from_json(j.contains("algebra") ? j.at("algebra") : j);
  } catch (const json::exception& e) {
    throw ConstraintError("bad_json", e.what());
  }
}

json verify_cmd(const Options& o) {
  const auto pa = parse_algebra(read_input(o.input));
  json out = {{"dim", pa.alg.dim()}};
  if (pa.galg) {
    out["galois"] = io::to_json(is_galois_extension(*pa.galg));
    out["criterion"] = io::to_json(galois_criterion(*pa.galg, o.seed));
  }
  if (pa.graded) {
    const auto rep = graded_division_report(*pa.graded);
    json gd = {{"verdict", rep.ok}};
    if (!rep.ok) gd["reason"] = rep.reason;
    out["graded_division"] = gd;
    if (rep.ok) {
      const auto g = gtcd_check(*pa.graded);
      json gt = {{"verdict", g.ok}, {"blocks", g.blocks}, {"gamma_dim", g.gamma_dim}};
      if (!g.ok) gt["reason"] = g.failure;
      out["gtcd"] = gt;
    }
  }
  require(pa.galg || pa.graded, "bad_json", "input needs an action or a grading to verify");
  return out;
}

json invariant_cmd(const Options& o) {
  const auto pa = parse_algebra(read_input(o.input));
  json out = json::object();
  if (pa.galg) {
    const auto cert = is_galois_extension(*pa.galg);
    require(cert.verdict, "not_galois", "Ψ is defined for Galois extensions only: " + cert.reason);
    out["psi"] = io::to_json(psi_invariant(*pa.galg, std::nullopt, 0, o.seed));
  }
  if (pa.graded) {
    require(is_graded_division(*pa.graded), "not_graded_division", "invariant needs a graded-division algebra");
    out["gdr_invariant"] = io::to_json(gdr_invariant(*pa.graded, o.seed));
  }
  require(pa.galg || pa.graded, "bad_json", "input needs an action or a grading");
  return out;
}

json selftest_cmd(const Options& o, bool& ok) {
  json rows = json::array();
  int passed = 0, failed = 0;
  for (const auto& r : acceptance::run(o.criteria)) {
    std::cerr << acceptance::format(r) << "\n";
    rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    (r.pass ? passed : failed)++;
  }
  ok = failed == 0;
  return {{"passed", passed}, {"failed", failed}, {"criteria", rows}};
}

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  require(f.good(), "io_error", "cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded-division algebras and Galois extensions over finite fields"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c, bool params) {
    c->add_option("--seed", o.seed, "seed for randomized steps (default 0)");
    c->add_option("--out", o.out, "write JSON here instead of stdout");
    if (!params) return;
    c->add_option("--field", o.field, "field p^e")->required();
    c->add_option("--group", o.group, "group d1xd2x...")->required();
    c->add_flag("--emit-algebras", o.emit_algebras, "include structure constants");
  };
  auto* eg = app.add_subcommand("enumerate-galois", "simple G-Galois extensions, one per class");
  common(eg, true);
  auto* ed = app.add_subcommand("enumerate-gdr", "graded-division algebras, one per graded-ring class");
  common(ed, true);
  ed->add_option("--dim-cap", o.dim_cap, "skip classes above this dimension");
  auto* co = app.add_subcommand("construct", "build one Galois extension, or a graded-division algebra with --support");
  common(co, true);
  co->add_option("--subgroup", o.subgroup, "K as generators \"(a,b);(c,d)\" (default: G, or T)");
  co->add_option("--support", o.support, "support T (graded-division mode)");
  co->add_option("--center", o.center, "center support H (graded-division mode, default trivial)");
  co->add_option("--coset", o.coset, "representative of the generating coset, e.g. \"(1,0)\"");
  co->add_option("--beta", o.beta, "bicharacter dlogs \"a,b;c,d\" on the generators of K (or K/H)");
  co->add_option("--s", o.s, "s-vector, e.g. 1,0");
  co->add_option("--chi", o.chi, "character dlogs on the generators of K_[|F^x|]");
  auto* ve = app.add_subcommand("verify", "check the Galois and graded-division conditions");
  common(ve, false);
  ve->add_option("--input", o.input, "algebra JSON")->required();
  auto* in = app.add_subcommand("invariant", "Ψ of a Galois extension or the graded-division fingerprint");
  common(in, false);
  in->add_option("--input", o.input, "algebra JSON")->required();
  auto* st = app.add_subcommand("selftest", "run the acceptance suite");
  common(st, false);
  st->add_option("criteria", o.criteria, "criterion numbers (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << json{{"error", "parse_error"}, {"message", e.what()}}.dump(2) << "\n";
    return 2;
  }
  try {
    bool ok = true;
    json out;
    if (*eg) out = enumerate_galois(o);
    else if (*ed) out = enumerate_gdr_cmd(o);
    else if (*co) out = construct_cmd(o);
    else if (*ve) out = verify_cmd(o);
    else if (*in) out = invariant_cmd(o);
    else out = selftest_cmd(o, ok);
    emit(out, o.out);
    return ok ? 0 : 1;
  } catch (const ConstraintError& e) {
    std::cout << json{{"error", e.reason()}, {"message", e.what()}}.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

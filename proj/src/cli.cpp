#include "combalg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>

#include "combalg/coordinate.hpp"
#include "combalg/freegroup.hpp"
#include "combalg/groebner.hpp"
#include "combalg/poly_io.hpp"
#include "combalg/retract.hpp"
#include "combalg/tame.hpp"
#include "report_json.hpp"

namespace combalg::cli {

const char* const kVersion = "0.1.0";

namespace {

using io::json;
using io::to_json;

struct Outcome {
  int code = kExitYes;
  json body = json::object();
};

using Runner = std::function<Outcome(json& input)>;
/// Independent re-check of a positive certificate; returns an empty string when valid.
using Checker = std::function<std::string(const json& input, const json& report)>;

struct Command {
  std::string group, name, help;
  std::vector<std::string> args;
  std::size_t required;
  Runner run;
  Checker check;
};

const std::string& str(const json& in, const char* key) { return in.at(key).get_ref<const std::string&>(); }

Outcome verdict(int code, const std::string& v) {
  Outcome o;
  o.code = code;
  o.body["verdict"] = v;
  return o;
}

// ---------------------------------------------------------------------------
// Free groups.

int fg_rank(json& in, std::initializer_list<const char*> keys) {
  if (!in.contains("rank")) {
    int r = 2;
    for (const char* k : keys) r = std::max(r, fg::infer_rank(str(in, k)));
    in["rank"] = r;
  }
  return in["rank"].get<int>();
}

json words(const fg::GeneratorTuple& t) {
  json a = json::array();
  for (const auto& w : t) a.push_back(fg::format(w));
  return a;
}

fg::GeneratorTuple words_from(const json& j, int rank) {
  fg::GeneratorTuple t;
  for (const auto& e : j) t.push_back(fg::parse_word(e.get<std::string>(), rank));
  return t;
}

std::string check_nonincreasing(const json& trace, std::size_t before) {
  std::size_t last = before;
  for (const auto& s : trace) {
    const auto c = s.at("complexity").get<std::size_t>();
    if (c > last) return "trace complexity increases";
    last = c;
  }
  return "";
}

Outcome fg_reduce(json& in) {
  const int r = fg_rank(in, {"word"});
  const fg::FreeWord w = fg::parse_word(str(in, "word"), r);
  const fg::CyclicWord c = fg::cyclic_reduce(w);
  Outcome o = verdict(kExitYes, "reduced");
  o.body["certificate"] = {{"free", fg::format(w)}, {"cyclic", fg::format(c)}};
  o.body["complexity_before"] = w.length();
  o.body["complexity_after"] = c.length();
  return o;
}

std::string fg_reduce_check(const json& in, const json& rep) {
  const int r = in.at("rank").get<int>();
  const auto w = fg::parse_word(str(rep["certificate"], "free"), r);
  if (!(w == fg::parse_word(str(in, "word"), r))) return "free form differs from the input";
  if (!(fg::cyclic_reduce(w) == fg::CyclicWord(fg::parse_word(str(rep["certificate"], "cyclic"), r))))
    return "cyclic form is not a rotation of the reduced word";
  return "";
}

Outcome fg_nielsen(json& in) {
  const int r = fg_rank(in, {"tuple"});
  const auto t = fg::parse_tuple(str(in, "tuple"), r);
  const auto res = fg::nielsen_reduce(t);
  Outcome o = verdict(kExitYes, "reduced");
  o.body["certificate"] = {{"reduced", words(res.reduced)}};
  o.body["trace"] = to_json(res.trace);
  o.body["complexity_before"] = fg::total_length(t);
  o.body["complexity_after"] = fg::total_length(res.reduced);
  return o;
}

std::string fg_nielsen_check(const json& in, const json& rep) {
  const int r = in.at("rank").get<int>();
  const auto t = fg::parse_tuple(str(in, "tuple"), r);
  if (!(fg::replay(t, io::move_trace_from(rep["trace"])) == words_from(rep["certificate"]["reduced"], r)))
    return "trace does not replay to the reduced tuple";
  return check_nonincreasing(rep["trace"], fg::total_length(t));
}

Outcome fg_member(json& in) {
  const int r = fg_rank(in, {"tuple", "word"});
  const auto t = fg::parse_tuple(str(in, "tuple"), r);
  const auto w = fg::parse_word(str(in, "word"), r);
  const auto m = fg::subgroup_membership(t, w);
  Outcome o = verdict(m.member ? kExitYes : kExitNo, m.member ? "member" : "not_member");
  if (m.member) o.body["certificate"] = {{"expression", fg::format(*m.expression)}};
  return o;
}

std::string fg_member_check(const json& in, const json& rep) {
  if (rep["verdict"] != "member") return "";
  const int r = in.at("rank").get<int>();
  const auto t = fg::parse_tuple(str(in, "tuple"), r);
  const auto e = fg::parse_word(str(rep["certificate"], "expression"), static_cast<int>(t.size()));
  return fg::evaluate(e, t) == fg::parse_word(str(in, "word"), r) ? "" : "expression does not evaluate to the word";
}

Outcome fg_same(json& in) {
  const int r = fg_rank(in, {"a", "b"});
  const auto a = fg::parse_tuple(str(in, "a"), r);
  const auto b = fg::parse_tuple(str(in, "b"), r);
  json cert = json::object();
  auto express = [&](const fg::GeneratorTuple& from, const fg::GeneratorTuple& in_terms_of, const char* key) {
    json exprs = json::array();
    for (std::size_t i = 0; i < from.size(); ++i) {
      auto m = fg::subgroup_membership(in_terms_of, from[i]);
      if (!m.member) {
        cert = {{"missing", {{"side", key}, {"index", i}}}};
        return false;
      }
      exprs.push_back(fg::format(*m.expression));
    }
    cert[key] = exprs;
    return true;
  };
  const bool same = express(a, b, "a_in_b") && express(b, a, "b_in_a");
  Outcome o = verdict(same ? kExitYes : kExitNo, same ? "same" : "different");
  o.body["certificate"] = cert;
  return o;
}

std::string fg_same_check(const json& in, const json& rep) {
  if (rep["verdict"] != "same") return "";
  const int r = in.at("rank").get<int>();
  const auto a = fg::parse_tuple(str(in, "a"), r);
  const auto b = fg::parse_tuple(str(in, "b"), r);
  auto check = [&](const fg::GeneratorTuple& from, const fg::GeneratorTuple& gens, const json& exprs) {
    if (exprs.size() != from.size()) return false;
    for (std::size_t i = 0; i < from.size(); ++i)
      if (!(fg::evaluate(fg::parse_word(exprs[i].get<std::string>(), static_cast<int>(gens.size())), gens) == from[i]))
        return false;
    return true;
  };
  return check(a, b, rep["certificate"]["a_in_b"]) && check(b, a, rep["certificate"]["b_in_a"])
             ? ""
             : "an expression does not evaluate to its generator";
}

Outcome fg_auto(json& in) {
  const int r = fg_rank(in, {"tuple"});
  const auto t = fg::parse_tuple(str(in, "tuple"), r);
  const auto v = fg::is_free_automorphism(t);
  Outcome o = verdict(v.automorphism ? kExitYes : kExitNo, v.automorphism ? "automorphism" : "not_automorphism");
  o.body["certificate"] = {{"reduced", words(v.reduction.reduced)}};
  o.body["trace"] = to_json(v.reduction.trace);
  o.body["complexity_before"] = fg::total_length(t);
  o.body["complexity_after"] = fg::total_length(v.reduction.reduced);
  return o;
}

std::string fg_auto_check(const json& in, const json& rep) {
  const int r = in.at("rank").get<int>();
  const auto t = fg::parse_tuple(str(in, "tuple"), r);
  const auto reduced = words_from(rep["certificate"]["reduced"], r);
  if (!(fg::replay(t, io::move_trace_from(rep["trace"])) == reduced)) return "trace does not replay";
  if (rep["verdict"] == "automorphism") {
    std::set<int> seen;
    for (const auto& w : reduced)
      if (w.length() == 1) seen.insert(std::abs(w.letters()[0]));
    if (reduced.size() != static_cast<std::size_t>(r) || seen.size() != reduced.size())
      return "reduced tuple is not a signed basis";
  }
  return "";
}

Outcome fg_whitehead_common(json& in, bool decide) {
  const int r = fg_rank(in, {"word"});
  const auto w = fg::parse_word(str(in, "word"), r);
  fg::MinimizeResult m;
  Outcome o;
  if (decide) {
    auto v = fg::is_primitive(w);
    o = verdict(v.primitive ? kExitYes : kExitNo, v.primitive ? "primitive" : "not_primitive");
    m = std::move(v.minimization);
  } else {
    m = fg::whitehead_minimize(fg::cyclic_reduce(w));
    o = verdict(kExitYes, "minimized");
  }
  o.body["certificate"] = {{"minimal", fg::format(m.minimal)}};
  o.body["trace"] = to_json(m.trace);
  o.body["complexity_before"] = fg::cyclic_reduce(w).length();
  o.body["complexity_after"] = m.minimal.length();
  return o;
}

std::string fg_whitehead_check(const json& in, const json& rep) {
  const int r = in.at("rank").get<int>();
  const auto start = fg::cyclic_reduce(fg::parse_word(str(in, "word"), r));
  const fg::CyclicWord minimal(fg::parse_word(str(rep["certificate"], "minimal"), r));
  if (!(fg::replay(start, io::move_trace_from(rep["trace"])) == minimal)) return "trace does not replay";
  if (rep["verdict"] == "primitive" && minimal.length() != 1) return "minimal form is not a generator";
  return check_nonincreasing(rep["trace"], start.length());
}

Outcome fg_conjugacy(json& in) {
  const int r = fg_rank(in, {"u", "v"});
  if (!in.contains("budget")) in["budget"] = 20000;
  const auto u = fg::parse_word(str(in, "u"), r);
  const auto v = fg::parse_word(str(in, "v"), r);
  const auto c = fg::automorphic_conjugacy(u, v, in["budget"].get<std::size_t>());
  Outcome o;
  switch (c.outcome) {
    case fg::ConjugacyOutcome::equivalent:
      o = verdict(kExitYes, "equivalent");
      break;
    case fg::ConjugacyOutcome::not_equivalent:
      o = verdict(kExitNo, "not_equivalent");
      break;
    case fg::ConjugacyOutcome::budget_exceeded:
      o = verdict(kExitInconclusive, "inconclusive");
      break;
  }
  o.body["certificate"] = {{"from", fg::format(fg::cyclic_reduce(u))},
                           {"to", fg::format(fg::cyclic_reduce(v))},
                           {"states_visited", c.states_visited}};
  o.body["trace"] = to_json(c.trace);
  o.body["complexity_before"] = fg::cyclic_reduce(u).length();
  o.body["complexity_after"] = fg::cyclic_reduce(v).length();
  return o;
}

std::string fg_conjugacy_check(const json& in, const json& rep) {
  if (rep["verdict"] != "equivalent") return "";
  const int r = in.at("rank").get<int>();
  const auto u = fg::cyclic_reduce(fg::parse_word(str(in, "u"), r));
  const auto v = fg::cyclic_reduce(fg::parse_word(str(in, "v"), r));
  return fg::replay(u, io::move_trace_from(rep["trace"])) == v ? "" : "trace does not carry u to v";
}

// ---------------------------------------------------------------------------
// Polynomials and Groebner bases.

std::size_t poly_vars(json& in, std::size_t fallback = 2) {
  if (!in.contains("rank")) in["rank"] = fallback;
  const int n = in["rank"].get<int>();
  if (n < 1) throw std::invalid_argument("number of variables must be positive");
  return static_cast<std::size_t>(n);
}

Polynomial plane(const json& in, const char* key) { return parse_polynomial(str(in, key), 2); }
PolyMap plane_map(const json& in, const char* key) { return parse_polymap(str(in, key), 2); }

std::vector<Polynomial> parse_list(const std::string& text, std::size_t nvars) {
  std::string s = text;
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first != std::string::npos && ((s[first] == '{' && s[last] == '}') || (s[first] == '[' && s[last] == ']')))
    s = s.substr(first + 1, last - first - 1);
  std::vector<Polynomial> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(parse_polynomial(s.substr(start, comma - start), nvars));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

json polys(const std::vector<Polynomial>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(to_json(p));
  return a;
}

std::vector<Polynomial> polys_from(const json& j, std::size_t nvars) {
  std::vector<Polynomial> out;
  for (const auto& e : j) out.push_back(io::polynomial_from(e, nvars));
  return out;
}

Outcome poly_parse(json& in) {
  const Polynomial p = parse_polynomial(str(in, "poly"), poly_vars(in));
  Outcome o = verdict(kExitYes, "parsed");
  o.body["certificate"] = {{"canonical", format(p)}, {"degree", p.degree()}, {"terms", p.terms().size()}};
  return o;
}

std::string poly_parse_check(const json& in, const json& rep) {
  const auto n = in.at("rank").get<std::size_t>();
  return parse_polynomial(str(rep["certificate"], "canonical"), n) == parse_polynomial(str(in, "poly"), n)
             ? ""
             : "canonical form differs";
}

Outcome poly_jacobian(json& in) {
  const PolyMap phi = plane_map(in, "map");
  const PolyMatrix2 j = jacobian(phi);
  const Polynomial det = jacobian_det(phi);
  const bool unit = is_jacobian_unit(phi);
  Outcome o = verdict(unit ? kExitYes : kExitNo, unit ? "unit" : "not_unit");
  o.body["certificate"] = {{"matrix", json::array({json::array({to_json(j[0][0]), to_json(j[0][1])}),
                                       json::array({to_json(j[1][0]), to_json(j[1][1])})})},
                           {"det", to_json(det)}};
  return o;
}

std::string poly_jacobian_check(const json& in, const json& rep) {
  const PolyMap phi = plane_map(in, "map");
  const auto& m = rep["certificate"]["matrix"];
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k)
      if (!(io::polynomial_from(m[i][k], 2) == partial_derivative(phi[i], k))) return "matrix entry differs";
  const Polynomial det = io::polynomial_from(m[0][0], 2) * io::polynomial_from(m[1][1], 2) -
                         io::polynomial_from(m[0][1], 2) * io::polynomial_from(m[1][0], 2);
  if (!(det == io::polynomial_from(rep["certificate"]["det"], 2))) return "determinant differs";
  const bool unit = det.is_constant() && !det.is_zero();
  return unit == (rep["verdict"] == "unit") ? "" : "verdict contradicts the determinant";
}

std::string check_groebner(const std::vector<Polynomial>& gens, const std::vector<Polynomial>& basis) {
  for (const auto& g : basis)
    if (g.is_zero() || !(g.leading_coefficient() == 1)) return "basis element not monic";
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = i + 1; k < basis.size(); ++k)
      if (!reduce_mod_basis(s_polynomial(basis[i], basis[k]).value, basis).is_zero())
        return "an S-polynomial does not reduce to zero";
  for (const auto& g : gens)
    if (!reduce_mod_basis(g, basis).is_zero()) return "a generator does not reduce to zero";
  return "";
}

Outcome gb_basis(json& in) {
  const auto gens = parse_list(str(in, "polys"), poly_vars(in));
  Outcome o = verdict(kExitYes, "basis");
  o.body["certificate"] = {{"basis", polys(buchberger(gens))}};
  return o;
}

Outcome gb_contains_one(json& in) {
  const auto gens = parse_list(str(in, "polys"), poly_vars(in));
  const auto basis = buchberger(gens);
  const bool one = basis.size() == 1 && basis[0].is_constant();
  Outcome o = verdict(one ? kExitYes : kExitNo, one ? "contains_one" : "proper_ideal");
  o.body["certificate"] = {{"basis", polys(basis)}};
  return o;
}

std::string gb_check(const json& in, const json& rep) {
  const auto n = in.at("rank").get<std::size_t>();
  const auto basis = polys_from(rep["certificate"]["basis"], n);
  if (auto e = check_groebner(parse_list(str(in, "polys"), n), basis); !e.empty()) return e;
  if (rep["verdict"] == "contains_one" && !(basis.size() == 1 && basis[0] == Polynomial::constant(n, 1)))
    return "basis is not {1}";
  return "";
}

Outcome gb_spoly(json& in) {
  const auto n = poly_vars(in);
  const Polynomial p = parse_polynomial(str(in, "p"), n), q = parse_polynomial(str(in, "q"), n);
  const auto s = s_polynomial(p, q);
  const bool regular = classify_reduction(p, q) == ReductionKind::regular;
  Outcome o = verdict(kExitYes, regular ? "regular" : "singular");
  o.body["certificate"] = {{"value", to_json(s.value)},
                           {"lcm", to_json(s.record.lcm)},
                           {"lead_p", to_json(s.record.lead_p)},
                           {"lead_q", to_json(s.record.lead_q)}};
  return o;
}

std::string gb_spoly_check(const json& in, const json& rep) {
  const auto n = in.at("rank").get<std::size_t>();
  const Polynomial p = parse_polynomial(str(in, "p"), n), q = parse_polynomial(str(in, "q"), n);
  const Monomial lcm = io::monomial_from(rep["certificate"]["lcm"]);
  auto cofactor = [&](const Polynomial& f) {
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, lcm[i] - f.leading_monomial()[i]);
    return Polynomial::term(Rational(1) / f.leading_coefficient(), m);
  };
  const Polynomial value = cofactor(p) * p - cofactor(q) * q;
  return value == io::polynomial_from(rep["certificate"]["value"], n) ? "" : "S-polynomial value differs";
}

// ---------------------------------------------------------------------------
// Automorphisms.

Outcome tame_decompose(json& in) {
  const auto v = decompose_automorphism(plane(in, "g1"), plane(in, "g2"));
  Outcome o = verdict(v.automorphism ? kExitYes : kExitNo, v.automorphism ? "automorphism" : "not_automorphism");
  if (v.automorphism)
    o.body["certificate"] = {{"factors", to_json(v.decomposition)}};
  else
    o.body["certificate"] = {{"reason", to_string(*v.reason)},
                             {"residual", {to_json(v.residual[0]), to_json(v.residual[1])}}};
  return o;
}

std::string tame_decompose_check(const json& in, const json& rep) {
  if (rep["verdict"] != "automorphism") return "";
  const PolyMap phi({plane(in, "g1"), plane(in, "g2")});
  return compose_factors(io::decomposition_from(rep["certificate"]["factors"])) == phi ? ""
                                                                                        : "factors do not recompose";
}

Outcome tame_invert(json& in) {
  const auto v = decompose_automorphism(plane(in, "g1"), plane(in, "g2"));
  if (!v.automorphism) return verdict(kExitNo, "not_automorphism");
  Outcome o = verdict(kExitYes, "invertible");
  o.body["certificate"] = {{"inverse", to_json(invert_automorphism(v.decomposition))},
                           {"factors", to_json(inverse(v.decomposition))}};
  return o;
}

std::string tame_invert_check(const json& in, const json& rep) {
  if (rep["verdict"] != "invertible") return "";
  const PolyMap phi({plane(in, "g1"), plane(in, "g2")});
  const PolyMap inv = io::polymap_from(rep["certificate"]["inverse"], 2);
  if (!(compose(phi, inv) == PolyMap::identity(2)) || !(compose(inv, phi) == PolyMap::identity(2)))
    return "not a two-sided inverse";
  return compose_factors(io::decomposition_from(rep["certificate"]["factors"])) == inv ? ""
                                                                                        : "factors do not recompose";
}

Outcome tame_univar(json& in) {
  const Polynomial u = parse_polynomial(str(in, "u"), 1), v = parse_polynomial(str(in, "v"), 1);
  const auto r = is_univariate_generating_pair(u, v);
  Outcome o = verdict(r.generating ? kExitYes : kExitNo, r.generating ? "generating" : "not_generating");
  json trace = json::array();
  for (const auto& s : r.trace) trace.push_back(to_json(s));
  o.body["trace"] = trace;
  o.body["certificate"] = {{"final_pair", {to_json(r.final_pair[0]), to_json(r.final_pair[1])}},
                           {"final_degrees", r.final_degrees}};
  return o;
}

std::string tame_univar_check(const json& in, const json& rep) {
  std::array<Polynomial, 2> pair{parse_polynomial(str(in, "u"), 1), parse_polynomial(str(in, "v"), 1)};
  for (const auto& e : rep["trace"]) {
    const auto s = io::univariate_step_from(e);
    pair[s.target] -= s.mu * pow(pair[1 - s.target], s.power);
  }
  const auto& fin = rep["certificate"]["final_pair"];
  if (!(pair[0] == io::polynomial_from(fin[0], 1)) || !(pair[1] == io::polynomial_from(fin[1], 1)))
    return "steps do not replay to the final pair";
  const bool linear = pair[0].degree() == 1 || pair[1].degree() == 1;
  if ((rep["verdict"] == "generating") != linear) return "final pair contradicts the verdict";
  return "";
}

Outcome tame_random(json& in) {
  if (!in.contains("seed")) in["seed"] = 1;
  if (!in.contains("k")) in["k"] = "4";
  const unsigned k = static_cast<unsigned>(std::stoul(str(in, "k")));
  const auto r = random_tame_automorphism(in["seed"].get<std::uint64_t>(), k);
  Outcome o = verdict(kExitYes, "generated");
  o.body["certificate"] = {{"map", to_json(r.map)}, {"factors", to_json(r.decomposition)}};
  return o;
}

std::string tame_random_check(const json&, const json& rep) {
  return compose_factors(io::decomposition_from(rep["certificate"]["factors"])) ==
                 io::polymap_from(rep["certificate"]["map"], 2)
             ? ""
             : "factors do not recompose";
}

// ---------------------------------------------------------------------------
// Coordinates.

json matrix_factors(const GEMatrix& m) {
  json a = json::array();
  for (const auto& f : m.factors()) a.push_back(to_json(f));
  return a;
}

GEMatrix matrix_from(const json& j) {
  GEMatrix m(2);
  for (const auto& f : j) m.append(io::ge_factor_from(f));
  return m;
}

Outcome coord_check(json& in) {
  const Polynomial p = plane(in, "poly");
  const auto v = is_coordinate(p);
  Outcome o;
  if (v.coordinate) {
    o = verdict(kExitYes, "coordinate");
    o.body["certificate"] = {{"matrix_factors", matrix_factors(v.certificate->matrix)},
                             {"q", to_json(v.certificate->q)},
                             {"auto_sequence", to_json(v.certificate->auto_sequence)}};
  } else if (v.reduction.budget_exhausted) {
    o = verdict(kExitInconclusive, "inconclusive");
  } else {
    o = verdict(kExitNo, "not_coordinate");
    o.body["reason"] = to_string(*v.reason);
  }
  o.body["trace"] = to_json(v.reduction.trace);
  return o;
}

std::string coord_check_check(const json& in, const json& rep) {
  if (rep["verdict"] != "coordinate") return "";
  const Polynomial p = plane(in, "poly");
  const auto& c = rep["certificate"];
  CoordCertificate cert{matrix_from(c["matrix_factors"]), io::polynomial_from(c["q"], 2),
                        io::decomposition_from(c["auto_sequence"])};
  if (!verify_certificate(p, cert)) return "certificate does not verify";
  const PolyRow2 end = replay(gradient(p), io::reduction_trace_from(rep["trace"]));
  if (!(end[0] == Polynomial::constant(2, 1)) || !end[1].is_zero()) return "trace does not reach (1, 0)";
  return "";
}

Outcome coord_complete(json& in) {
  const Polynomial p = plane(in, "poly");
  if (!is_coordinate(p).coordinate) return verdict(kExitNo, "not_coordinate");
  const Polynomial q = complete_to_basis(p);
  Outcome o = verdict(kExitYes, "completed");
  o.body["certificate"] = {{"q", to_json(q)}, {"factors", to_json(decompose_automorphism(p, q).decomposition)}};
  return o;
}

std::string coord_complete_check(const json& in, const json& rep) {
  if (rep["verdict"] != "completed") return "";
  const PolyMap phi({plane(in, "poly"), io::polynomial_from(rep["certificate"]["q"], 2)});
  if (!is_jacobian_unit(phi)) return "Jacobian of (p, q) is not a unit";
  return compose_factors(io::decomposition_from(rep["certificate"]["factors"])) == phi ? ""
                                                                                        : "factors do not recompose";
}

Outcome coord_reduce(json& in) {
  const Polynomial p = plane(in, "poly");
  if (!is_coordinate(p).coordinate) return verdict(kExitNo, "not_coordinate");
  Outcome o = verdict(kExitYes, "reduced");
  o.body["certificate"] = {{"auto_sequence", to_json(reduce_to_x1(p))}};
  return o;
}

std::string coord_reduce_check(const json& in, const json& rep) {
  if (rep["verdict"] != "reduced") return "";
  const auto seq = io::decomposition_from(rep["certificate"]["auto_sequence"]);
  return apply_factors(plane(in, "poly"), seq) == Polynomial::variable(2, 0) ? "" : "sequence does not send p to x";
}

Outcome coord_conjg(json& in) {
  const Polynomial p = plane(in, "poly");
  if (!in.contains("budget")) in["budget"] = 1000;
  if (!unimodular_gradient(p)) return verdict(kExitNo, "not_unimodular");
  const auto v = conjecture_g_search(p, in["budget"].get<std::size_t>());
  Outcome o = verdict(v.found ? kExitYes : kExitInconclusive, v.found ? "found" : "inconclusive");
  o.body["certificate"] = {{"singular_steps", v.singular_steps}, {"attempts", v.attempts}};
  o.body["trace"] = to_json(v.witness);
  return o;
}

std::string coord_conjg_check(const json& in, const json& rep) {
  if (rep["verdict"] != "found") return "";
  const auto trace = io::reduction_trace_from(rep["trace"]);
  std::size_t singular = 0;
  for (const auto& e : trace) singular += std::holds_alternative<SingularStep>(e.step);
  if (singular != rep["certificate"]["singular_steps"].get<std::size_t>() || singular > 1)
    return "singular step count differs";
  const PolyRow2 end = replay(gradient(plane(in, "poly")), trace);
  return end[0] == Polynomial::constant(2, 1) && end[1].is_zero() ? "" : "witness does not reach (1, 0)";
}

Outcome coord_unimodular(json& in) {
  const Polynomial p = plane(in, "poly");
  const PolyRow2 g = gradient(p);
  const auto basis = buchberger(std::vector<Polynomial>{g[0], g[1]});
  const bool unit = unimodular_gradient(p);
  Outcome o = verdict(unit ? kExitYes : kExitNo, unit ? "unimodular" : "not_unimodular");
  o.body["certificate"] = {{"gradient", {to_json(g[0]), to_json(g[1])}}, {"basis", polys(basis)}};
  return o;
}

std::string coord_unimodular_check(const json& in, const json& rep) {
  const PolyRow2 g = gradient(plane(in, "poly"));
  const auto basis = polys_from(rep["certificate"]["basis"], 2);
  if (auto e = check_groebner({g[0], g[1]}, basis); !e.empty()) return e;
  const bool one = basis.size() == 1 && basis[0] == Polynomial::constant(2, 1);
  return one == (rep["verdict"] == "unimodular") ? "" : "basis contradicts the verdict";
}

// ---------------------------------------------------------------------------
// Retracts.

json retraction_json(const Retraction& r) {
  json j = {{"map", to_json(r.phi)},
            {"idempotence", {to_json(r.idempotence[0]), to_json(r.idempotence[1])}},
            {"image", to_string(r.image)}};
  if (r.generator) j["generator"] = to_json(*r.generator);
  return j;
}

std::string check_retraction_json(const PolyMap& phi, const json& c) {
  if (!(compose(phi, phi) == phi)) return "map is not idempotent";
  if (!(io::polymap_from(c["idempotence"], 2) == phi)) return "idempotence identities differ";
  if (c.contains("generator")) {
    const Polynomial h = io::polynomial_from(c["generator"], 2);
    if (!(substitute(h, phi) == h)) return "generator is not fixed";
  }
  return "";
}

Outcome retract_verify(json& in) {
  const auto v = verify_retraction(plane_map(in, "map"));
  Outcome o = verdict(v.retraction ? kExitYes : kExitNo, v.retraction ? "retraction" : "not_retraction");
  if (v.retraction) o.body["certificate"] = retraction_json(*v.certificate);
  return o;
}

std::string retract_verify_check(const json& in, const json& rep) {
  if (rep["verdict"] != "retraction") return "";
  return check_retraction_json(plane_map(in, "map"), rep["certificate"]);
}

Outcome retract_normal_form(json& in) {
  Outcome o = verdict(kExitYes, "retraction");
  o.body["certificate"] = retraction_json(normal_form_retraction(plane(in, "q")));
  return o;
}

std::string retract_normal_form_check(const json& in, const json& rep) {
  const Polynomial p = Polynomial::variable(2, 0) + Polynomial::variable(2, 1) * plane(in, "q");
  const PolyMap phi = io::polymap_from(rep["certificate"]["map"], 2);
  if (!(phi == PolyMap({p, Polynomial(2)}))) return "map is not (x + y q, 0)";
  if (!(substitute(p, phi) == p)) return "x + y q is not fixed";
  return check_retraction_json(phi, rep["certificate"]);
}

Outcome retract_witness(json& in) {
  const Polynomial p = plane(in, "poly");
  if (!in.contains("deg")) in["deg"] = 2 * std::max(p.degree(), 0);
  if (!in.contains("budget")) in["budget"] = kDefaultWitnessBudget;
  const auto w = retract_witness_search(p, in["deg"].get<unsigned>(), in["budget"].get<std::size_t>());
  if (!w.found) {
    Outcome o = verdict(kExitInconclusive, "no_witness_up_to_degree");
    o.body["certificate"] = {{"degree_bound", w.degree_bound}, {"groebner_calls", w.groebner_calls}};
    return o;
  }
  Outcome o = verdict(kExitYes, "retract");
  o.body["certificate"] = {
      {"a", to_json(w.a)}, {"b", to_json(w.b)}, {"route", w.route}, {"groebner_calls", w.groebner_calls}};
  return o;
}

std::string retract_witness_check(const json& in, const json& rep) {
  if (rep["verdict"] != "retract") return "";
  const Polynomial a = io::polynomial_from(rep["certificate"]["a"], 2);
  const Polynomial b = io::polynomial_from(rep["certificate"]["b"], 2);
  const int bound = in.at("deg").get<int>();
  if (a.degree() > bound || b.degree() > bound) return "witness exceeds the degree bound";
  return substitute(plane(in, "poly"), PolyMap({a, b})) == Polynomial::variable(2, 0) ? "" : "p(a, b) is not x";
}

Outcome retract_fixed(json& in) {
  const PolyMap phi = plane_map(in, "map");
  if (!in.contains("deg")) in["deg"] = 2 * std::max(phi.degree(), 0);
  const auto basis = find_fixed_polynomials(phi, in["deg"].get<unsigned>());
  Outcome o = verdict(kExitYes, "fixed_space");
  o.body["certificate"] = {{"basis", polys(basis)}, {"dimension", basis.size()}};
  return o;
}

std::string retract_fixed_check(const json& in, const json& rep) {
  const PolyMap phi = plane_map(in, "map");
  std::set<std::vector<Exponent>> leads;
  for (const auto& f : polys_from(rep["certificate"]["basis"], 2)) {
    if (f.degree() > in.at("deg").get<int>()) return "basis element exceeds the degree bound";
    if (!(substitute(f, phi) == f)) return "basis element is not fixed";
    if (!leads.insert({f.leading_monomial()[0], f.leading_monomial()[1]}).second) return "basis is not independent";
  }
  return "";
}

Outcome retract_stable(json& in) {
  const PolyMap phi = plane_map(in, "map");
  if (!in.contains("k")) in["k"] = "4";
  if (!in.contains("deg")) in["deg"] = default_fixed_degree(phi);
  const auto r =
      stable_image_diagnostics(phi, static_cast<unsigned>(std::stoul(str(in, "k"))), in["deg"].get<unsigned>());
  Outcome o = verdict(kExitYes, r.automorphism ? "automorphism" : "not_automorphism");
  o.body["certificate"] = {{"iterate_degrees", r.iterate_degrees},
                           {"fixed_dimensions", r.fixed_dimensions},
                           {"constant_images", r.constant_images}};
  return o;
}

Outcome retract_jc(json& in) {
  const PolyMap phi = plane_map(in, "map");
  if (!in.contains("deg")) in["deg"] = default_fixed_degree(phi);
  const auto r = jc_harness(phi, in["deg"].get<unsigned>());
  Outcome o;
  if (r.inconsistency)
    o = verdict(kExitNo, "inconsistent");
  else
    o = verdict(kExitYes, r.hypothesis_met ? "consistent" : "hypothesis_not_met");
  json c = {{"jacobian_det", to_json(r.jacobian_det)}, {"jacobian_unit", r.jacobian_unit},
            {"fixed_degree", r.fixed_degree},          {"fixed", polys(r.fixed)},
            {"automorphism", r.automorphism}};
  if (r.decomposition) c["factors"] = to_json(*r.decomposition);
  o.body["certificate"] = c;
  return o;
}

std::string retract_jc_check(const json& in, const json& rep) {
  const PolyMap phi = plane_map(in, "map");
  const auto& c = rep["certificate"];
  if (!(jacobian_det(phi) == io::polynomial_from(c["jacobian_det"], 2))) return "Jacobian determinant differs";
  for (const auto& f : polys_from(c["fixed"], 2))
    if (!(substitute(f, phi) == f)) return "listed polynomial is not fixed";
  if (c.contains("factors") && !(compose_factors(io::decomposition_from(c["factors"])) == phi))
    return "factors do not recompose";
  return "";
}

// ---------------------------------------------------------------------------

const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {"fg", "reduce", "Free and cyclic reduction of a word", {"word"}, 1, fg_reduce, fg_reduce_check},
      {"fg", "nielsen", "Nielsen reduction of a tuple", {"tuple"}, 1, fg_nielsen, fg_nielsen_check},
      {"fg", "member", "Subgroup membership", {"tuple", "word"}, 2, fg_member, fg_member_check},
      {"fg", "same-subgroup", "Equality of generated subgroups", {"a", "b"}, 2, fg_same, fg_same_check},
      {"fg", "auto", "Is the tuple the image of a basis under an automorphism", {"tuple"}, 1, fg_auto, fg_auto_check},
      {"fg", "primitive", "Primitive element test", {"word"}, 1,
       [](json& in) { return fg_whitehead_common(in, true); }, fg_whitehead_check},
      {"fg", "whitehead", "Whitehead minimization of a cyclic word", {"word"}, 1,
       [](json& in) { return fg_whitehead_common(in, false); }, fg_whitehead_check},
      {"fg", "conjugacy", "Automorphic conjugacy of two words", {"u", "v"}, 2, fg_conjugacy, fg_conjugacy_check},
      {"poly", "parse", "Canonical form of a polynomial", {"poly"}, 1, poly_parse, poly_parse_check},
      {"poly", "jacobian", "Jacobian matrix and determinant of a plane map", {"map"}, 1, poly_jacobian,
       poly_jacobian_check},
      {"gb", "basis", "Reduced Groebner basis (deglex)", {"polys"}, 1, gb_basis, gb_check},
      {"gb", "contains-one", "Does the ideal contain 1", {"polys"}, 1, gb_contains_one, gb_check},
      {"gb", "spoly", "S-polynomial and reduction kind", {"p", "q"}, 2, gb_spoly, gb_spoly_check},
      {"tame", "decompose", "Decompose (g1, g2) into elementary factors", {"g1", "g2"}, 2, tame_decompose,
       tame_decompose_check},
      {"tame", "invert", "Inverse of an automorphism", {"g1", "g2"}, 2, tame_invert, tame_invert_check},
      {"tame", "univar-pair", "Does (u, v) generate K[t]", {"u", "v"}, 2, tame_univar, tame_univar_check},
      {"tame", "random", "Random tame automorphism with k factors", {"k"}, 0, tame_random, tame_random_check},
      {"coord", "check", "Coordinate test with certificate", {"poly"}, 1, coord_check, coord_check_check},
      {"coord", "complete", "Complete a coordinate to a basis", {"poly"}, 1, coord_complete, coord_complete_check},
      {"coord", "reduce", "Automorphism sequence sending p to x", {"poly"}, 1, coord_reduce, coord_reduce_check},
      {"coord", "conjg", "Reduction with one singular step", {"poly"}, 1, coord_conjg, coord_conjg_check},
      {"coord", "unimodular", "Do the partial derivatives generate the unit ideal", {"poly"}, 1, coord_unimodular,
       coord_unimodular_check},
      {"retract", "verify", "Idempotence check and image generator", {"map"}, 1, retract_verify,
       retract_verify_check},
      {"retract", "normal-form", "The retraction (x + y q, 0)", {"q"}, 1, retract_normal_form,
       retract_normal_form_check},
      {"retract", "witness", "Search a map sending p to x", {"poly"}, 1, retract_witness, retract_witness_check},
      {"retract", "fixed", "Fixed polynomials up to a degree", {"map"}, 1, retract_fixed, retract_fixed_check},
      {"retract", "stable", "Iterate degrees and fixed dimensions", {"map", "k"}, 1, retract_stable, nullptr},
      {"retract", "jc", "Jacobian and fixed-polynomial consistency harness", {"map"}, 1, retract_jc,
       retract_jc_check},
  };
  return table;
}

struct Options {
  bool json_out = false;
  std::optional<unsigned> deg;
  std::optional<std::size_t> budget;
  std::optional<std::uint64_t> seed;
  std::optional<int> rank;
  std::string verify;
  bool list = false;
  std::vector<std::string> positionals;
};

void print_text(const json& report, std::ostream& out) {
  out << "verdict: " << report["verdict"].get<std::string>() << "\n";
  if (report.contains("reason")) out << "reason: " << report["reason"].get<std::string>() << "\n";
  if (report.contains("certificate"))
    for (const auto& [key, value] : report["certificate"].items())
      out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  if (report.contains("complexity_before"))
    out << "complexity: " << report["complexity_before"] << " -> " << report["complexity_after"] << "\n";
  if (report.contains("trace") && !report["trace"].empty()) {
    out << "trace: " << report["trace"].size() << " steps\n";
    for (const auto& s : report["trace"]) {
      out << "  " << (s.contains("text") ? s["text"].get<std::string>() : s.dump());
      if (s.contains("complexity")) out << "  [" << s["complexity"] << "]";
      out << "\n";
    }
  }
}

int run_command(const Command& cmd, const Options& opt, std::ostream& out, std::ostream& err) {
  const std::string name = cmd.group + " " + cmd.name;
  if (!opt.verify.empty()) {
    if (!opt.positionals.empty()) {
      err << "error: --verify takes the input from the certificate file\n";
      return kExitUsage;
    }
    std::ifstream f(opt.verify);
    if (!f) {
      err << "error: cannot read " << opt.verify << "\n";
      return kExitUsage;
    }
    json rep = json::parse(f, nullptr, false);
    if (rep.is_discarded() || !rep.is_object() || !rep.contains("input") || !rep.contains("verdict")) {
      err << "error: " << opt.verify << " is not a report\n";
      return kExitUsage;
    }
    if (rep.value("command", "") != name) {
      err << "error: report was produced by '" << rep.value("command", "") << "', not '" << name << "'\n";
      return kExitUsage;
    }
    std::string problem;
    json input = rep["input"];
    const Outcome again = cmd.run(input);
    for (const auto& [key, value] : again.body.items())
      if (!rep.contains(key) || rep[key] != value) problem = "field '" + key + "' differs on recomputation";
    if (problem.empty() && cmd.check) problem = cmd.check(rep["input"], rep);
    const bool ok = problem.empty();
    if (opt.json_out)
      out << json{{"command", name}, {"verified", ok}, {"problem", problem}}.dump(2) << "\n";
    else
      out << (ok ? "verified" : "verification failed: " + problem) << "\n";
    return ok ? kExitYes : kExitNo;
  }

  if (opt.positionals.size() < cmd.required || opt.positionals.size() > cmd.args.size()) {
    err << "error: '" << name << "' expects " << cmd.required;
    if (cmd.args.size() != cmd.required) err << " to " << cmd.args.size();
    err << " argument(s)\n";
    return kExitUsage;
  }
  json input = json::object();
  for (std::size_t i = 0; i < opt.positionals.size(); ++i) input[cmd.args[i]] = opt.positionals[i];
  if (opt.deg) input["deg"] = *opt.deg;
  if (opt.budget) input["budget"] = *opt.budget;
  if (opt.seed) input["seed"] = *opt.seed;
  if (opt.rank) input["rank"] = *opt.rank;

  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = cmd.run(input);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json report = o.body;
  report["command"] = name;
  report["input"] = input;
  report["version"] = kVersion;
  report["timing"] = {{"seconds", seconds}};
  if (opt.json_out)
    out << report.dump(2) << "\n";
  else
    print_text(report, out);
  return o.code;
}

int run_selftest(const Options& opt, std::ostream& out) {
  const auto& cases = selftest_cases();
  if (opt.list) {
    for (const auto& c : cases) out << c.id << "  " << c.description << "\n";
    return kExitYes;
  }
  std::size_t failed = 0;
  json results = json::array();
  for (const auto& c : cases) {
    bool ok = false;
    try {
      ok = c.check();
    } catch (const std::exception&) {
      ok = false;
    }
    failed += !ok;
    if (opt.json_out)
      results.push_back({{"id", c.id}, {"pass", ok}});
    else
      out << (ok ? "PASS " : "FAIL ") << c.id << "\n";
  }
  if (opt.json_out)
    out << json{{"verdict", failed ? "fail" : "pass"}, {"results", results}, {"version", kVersion}}.dump(2) << "\n";
  else
    out << (cases.size() - failed) << "/" << cases.size() << " examples pass\n";
  return failed ? kExitNo : kExitYes;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures for free groups and plane polynomial automorphisms", "combalg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options opt;
  auto add_flags = [&](CLI::App* a) {
    a->add_flag("--json", opt.json_out, "Emit the report as JSON");
    a->add_option("--deg", opt.deg, "Degree bound (default depends on the command, see README)");
    a->add_option("--budget", opt.budget, "Search budget (default depends on the command)");
    a->add_option("--seed", opt.seed, "Random seed (default 1)");
    a->add_option("--rank", opt.rank, "Free group rank or number of polynomial variables (default inferred, or 2)");
    a->add_option("--verify", opt.verify, "Re-check a JSON report written by the same command");
  };

  std::map<CLI::App*, const Command*> leaves;
  std::map<std::string, CLI::App*> groups;
  for (const auto& cmd : commands()) {
    auto& g = groups[cmd.group];
    if (!g) {
      static const std::map<std::string, std::string> titles{
          {"fg", "Free groups: Nielsen and Whitehead procedures"},
          {"poly", "Polynomial parsing and Jacobians"},
          {"gb", "Groebner bases and S-polynomials"},
          {"tame", "Plane automorphisms and univariate pairs"},
          {"coord", "Coordinate polynomials"},
          {"retract", "Retractions, witnesses and fixed polynomials"}};
      g = app.add_subcommand(cmd.group, titles.at(cmd.group));
      g->require_subcommand(1);
    }
    CLI::App* leaf = g->add_subcommand(cmd.name, cmd.help);
    add_flags(leaf);
    leaf->add_option("args", opt.positionals, "Arguments");
    leaves[leaf] = &cmd;
  }
  CLI::App* self = app.add_subcommand("selftest", "Replay the worked examples");
  self->add_flag("--list", opt.list, "List example identifiers");
  self->add_flag("--json", opt.json_out, "Emit JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitYes : kExitUsage;
  }

  try {
    if (self->parsed()) return run_selftest(opt, out);
    for (const auto& [leaf, cmd] : leaves)
      if (leaf->parsed()) return run_command(*cmd, opt, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: malformed report: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace combalg::cli

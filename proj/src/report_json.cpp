#include "report_json.hpp"

#include <stdexcept>

#include "combalg/poly_io.hpp"

namespace combalg::io {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};

const char* side_name(fg::Side s) { return s == fg::Side::right ? "right" : "left"; }

const char* action_name(fg::WhiteheadAction a) {
  switch (a) {
    case fg::WhiteheadAction::fix:
      return "fix";
    case fg::WhiteheadAction::right_multiply:
      return "right";
    case fg::WhiteheadAction::left_multiply_inverse:
      return "left_inverse";
    case fg::WhiteheadAction::conjugate:
      return "conjugate";
  }
  return "";
}

fg::WhiteheadAction action_from(const std::string& s) {
  if (s == "fix") return fg::WhiteheadAction::fix;
  if (s == "right") return fg::WhiteheadAction::right_multiply;
  if (s == "left_inverse") return fg::WhiteheadAction::left_multiply_inverse;
  if (s == "conjugate") return fg::WhiteheadAction::conjugate;
  throw std::invalid_argument("unknown Whitehead action " + s);
}

}  // namespace

json to_json(const Rational& r) { return to_string(r); }
Rational rational_from(const json& j) { return parse_rational(j.get<std::string>()); }

json to_json(const Polynomial& p) { return format(p); }
Polynomial polynomial_from(const json& j, std::size_t nvars) { return parse_polynomial(j.get<std::string>(), nvars); }

json to_json(const Monomial& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.nvars(); ++i) a.push_back(m[i]);
  return a;
}

Monomial monomial_from(const json& j) {
  Monomial m(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) m.set(i, j[i].get<Exponent>());
  return m;
}

json to_json(const Term& t) { return {{"coeff", to_json(t.coeff)}, {"mono", to_json(t.mono)}}; }
Term term_from(const json& j) { return {rational_from(j.at("coeff")), monomial_from(j.at("mono"))}; }

json to_json(const PolyMap& phi) {
  json a = json::array();
  for (std::size_t i = 0; i < phi.arity(); ++i) a.push_back(to_json(phi[i]));
  return a;
}

PolyMap polymap_from(const json& j, std::size_t nvars) {
  std::vector<Polynomial> images;
  for (const auto& e : j) images.push_back(polynomial_from(e, nvars));
  return PolyMap(std::move(images));
}

// ---------------------------------------------------------------------------

json to_json(const fg::NielsenMove& m) {
  json j = std::visit(overloaded{
                          [](const fg::N1& n) -> json {
                            return {{"move", "N1"}, {"i", n.i}, {"j", n.j}, {"side", side_name(n.side)}};
                          },
                          [](const fg::N2& n) -> json { return {{"move", "N2"}, {"i", n.i}}; },
                          [](const fg::N3& n) -> json { return {{"move", "N3"}, {"i", n.i}, {"j", n.j}}; },
                      },
                      m);
  j["text"] = fg::format(m);
  return j;
}

json to_json(const fg::WhiteheadMove& m) {
  json j = std::visit(overloaded{
                          [](const fg::WhiteheadPermutation& w) -> json {
                            std::vector<bool> inv(w.invert.begin(), w.invert.end());
                            return {{"move", "W-perm"}, {"perm", w.perm}, {"invert", inv}};
                          },
                          [](const fg::WhiteheadMultiplier& w) -> json {
                            json actions = json::array();
                            for (auto a : w.actions) actions.push_back(action_name(a));
                            return {{"move", "W-mult"}, {"multiplier", w.multiplier}, {"actions", actions}};
                          },
                      },
                      m);
  j["text"] = fg::format(m);
  return j;
}

json to_json(const fg::MoveTrace& trace) {
  json a = json::array();
  for (const auto& step : trace) {
    json j = std::visit([](const auto& mv) { return to_json(mv); }, step.move);
    j["complexity"] = step.complexity;
    a.push_back(std::move(j));
  }
  return a;
}

fg::MoveTrace move_trace_from(const json& j) {
  fg::MoveTrace out;
  for (const auto& e : j) {
    const std::string kind = e.at("move").get<std::string>();
    fg::TraceStep step{fg::NielsenMove{fg::N2{0}}, e.at("complexity").get<std::size_t>()};
    if (kind == "N1") {
      const std::string side = e.at("side").get<std::string>();
      if (side != "right" && side != "left") throw std::invalid_argument("bad N1 side");
      step.move = fg::NielsenMove{fg::N1{e.at("i").get<std::size_t>(), e.at("j").get<std::size_t>(),
                                          side == "right" ? fg::Side::right : fg::Side::left}};
    } else if (kind == "N2") {
      step.move = fg::NielsenMove{fg::N2{e.at("i").get<std::size_t>()}};
    } else if (kind == "N3") {
      step.move = fg::NielsenMove{fg::N3{e.at("i").get<std::size_t>(), e.at("j").get<std::size_t>()}};
    } else if (kind == "W-perm") {
      fg::WhiteheadPermutation w;
      w.perm = e.at("perm").get<std::vector<int>>();
      for (bool b : e.at("invert").get<std::vector<bool>>()) w.invert.push_back(b);
      step.move = fg::WhiteheadMove{std::move(w)};
    } else if (kind == "W-mult") {
      fg::WhiteheadMultiplier w;
      w.multiplier = e.at("multiplier").get<int>();
      for (const auto& a : e.at("actions")) w.actions.push_back(action_from(a.get<std::string>()));
      step.move = fg::WhiteheadMove{std::move(w)};
    } else {
      throw std::invalid_argument("unknown move " + kind);
    }
    out.push_back(std::move(step));
  }
  return out;
}

// ---------------------------------------------------------------------------

json to_json(const ElementaryFactor& f) {
  json j = std::visit(overloaded{
                          [](const Linear& l) -> json {
                            json m = json::array();
                            for (const auto& row : l.m) m.push_back({to_json(row[0]), to_json(row[1])});
                            return {{"factor", "linear"}, {"m", m}};
                          },
                          [](const Shear& s) -> json { return {{"factor", "shear"}, {"f", to_json(s.f)}}; },
                          [](const Swap&) -> json { return {{"factor", "swap"}}; },
                      },
                      f);
  return j;
}

ElementaryFactor factor_from(const json& j) {
  const std::string kind = j.at("factor").get<std::string>();
  ElementaryFactor f = Swap{};
  if (kind == "linear") {
    Linear l;
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) l.m[r][c] = rational_from(j.at("m").at(r).at(c));
    f = l;
  } else if (kind == "shear") {
    f = Shear{polynomial_from(j.at("f"), 2)};
  } else if (kind != "swap") {
    throw std::invalid_argument("unknown factor " + kind);
  }
  validate(f);
  return f;
}

json to_json(const Decomposition& d) {
  json a = json::array();
  for (const auto& s : d.steps) {
    json j = to_json(s.factor);
    if (s.mu) j["mu"] = to_json(*s.mu);
    if (s.d) j["d"] = *s.d;
    a.push_back(std::move(j));
  }
  return a;
}

Decomposition decomposition_from(const json& j) {
  Decomposition d;
  for (const auto& e : j) {
    DecompositionStep s{factor_from(e), {}, {}};
    if (e.contains("mu")) s.mu = rational_from(e["mu"]);
    if (e.contains("d")) s.d = e["d"].get<unsigned>();
    d.steps.push_back(std::move(s));
  }
  return d;
}

json to_json(const GEFactor& f) {
  return std::visit(overloaded{
                        [](const ElementaryMatrix& e) -> json {
                          return {{"type", "elementary"}, {"row", e.row}, {"col", e.col}, {"entry", to_json(e.entry)}};
                        },
                        [](const DiagonalMatrix& d) -> json {
                          return {{"type", "diagonal"}, {"d", {to_json(d.d0), to_json(d.d1)}}};
                        },
                    },
                    f);
}

GEFactor ge_factor_from(const json& j) {
  const std::string kind = j.at("type").get<std::string>();
  if (kind == "elementary") {
    const auto row = j.at("row").get<std::size_t>(), col = j.at("col").get<std::size_t>();
    if (row > 1 || col > 1 || row == col) throw std::invalid_argument("bad elementary matrix position");
    return ElementaryMatrix{row, col, polynomial_from(j.at("entry"), 2)};
  }
  if (kind == "diagonal") return DiagonalMatrix{rational_from(j.at("d").at(0)), rational_from(j.at("d").at(1))};
  throw std::invalid_argument("unknown matrix factor " + kind);
}

json to_json(const ReductionStep& s) {
  return std::visit(overloaded{
                        [](const RegularStep& r) -> json {
                          return {{"step", "regular"}, {"target", r.target}, {"source", r.source},
                                  {"r", to_json(r.r)},   {"alpha", to_json(r.alpha)}};
                        },
                        [](const SingularStep& r) -> json {
                          return {{"step", "singular"},
                                  {"target", r.target},
                                  {"lcm", to_json(r.record.lcm)},
                                  {"lead_p", to_json(r.record.lead_p)},
                                  {"lead_q", to_json(r.record.lead_q)}};
                        },
                        [](const ScaleStep& r) -> json {
                          return {{"step", "scale"}, {"d", {to_json(r.d0), to_json(r.d1)}}};
                        },
                        [](const SwapStep&) -> json { return {{"step", "swap"}}; },
                    },
                    s);
}

ReductionStep reduction_step_from(const json& j) {
  const std::string kind = j.at("step").get<std::string>();
  auto index = [&](const char* key) {
    const auto v = j.at(key).get<std::size_t>();
    if (v > 1) throw std::invalid_argument("pair index out of range");
    return v;
  };
  if (kind == "regular")
    return RegularStep{index("target"), index("source"), polynomial_from(j.at("r"), 2), rational_from(j.at("alpha"))};
  if (kind == "singular")
    return SingularStep{index("target"),
                        {monomial_from(j.at("lcm")), term_from(j.at("lead_p")), term_from(j.at("lead_q"))}};
  if (kind == "scale") return ScaleStep{rational_from(j.at("d").at(0)), rational_from(j.at("d").at(1))};
  if (kind == "swap") return SwapStep{};
  throw std::invalid_argument("unknown reduction step " + kind);
}

json to_json(const ReductionTrace& t) {
  json a = json::array();
  for (const auto& e : t) {
    json j = to_json(e.step);
    j["max_degree"] = e.max_degree;
    a.push_back(std::move(j));
  }
  return a;
}

ReductionTrace reduction_trace_from(const json& j) {
  ReductionTrace t;
  for (const auto& e : j) t.push_back({reduction_step_from(e), e.at("max_degree").get<int>()});
  return t;
}

json to_json(const UnivariateStep& s) {
  return {{"target", s.target}, {"mu", to_json(s.mu)}, {"power", s.power}};
}

UnivariateStep univariate_step_from(const json& j) {
  const auto target = j.at("target").get<std::size_t>();
  if (target > 1) throw std::invalid_argument("pair index out of range");
  return {target, rational_from(j.at("mu")), j.at("power").get<unsigned>()};
}

}  // namespace combalg::io

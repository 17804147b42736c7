#include <sstream>

#include "combalg/cli.hpp"
#include "combalg/coordinate.hpp"
#include "combalg/freegroup.hpp"
#include "combalg/groebner.hpp"
#include "combalg/poly_io.hpp"
#include "combalg/retract.hpp"
#include "combalg/tame.hpp"

namespace combalg::cli {

namespace {

Polynomial P(const char* s) { return parse_polynomial(s, 2); }
Polynomial T(const char* s) { return parse_polynomial(s, 1); }

bool is_one_zero(const PolyRow2& pair) { return pair[0] == P("1") && pair[1].is_zero(); }

int exit_code(std::vector<std::string> args) {
  std::ostringstream out, err;
  return run(args, out, err);
}

}  // namespace

const std::vector<SelfTestCase>& selftest_cases() {
  static const std::vector<SelfTestCase> cases{
      {"poly.d1", "d/dx (x + x^2 y) = 1 + 2xy",
       [] { return partial_derivative(P("x + x^2*y"), 0) == P("1 + 2*x*y"); }},
      {"poly.d2", "d/dy (x + x^2 y) = x^2", [] { return partial_derivative(P("x + x^2*y"), 1) == P("x^2"); }},
      {"poly.parse", "x + x^2*y parses to its canonical form",
       [] { return format(P("x + x^2*y")) == "x^2*y + x"; }},
      {"poly.deglex", "deglex places x^2 > xy > y^2",
       [] { return format(pow(P("x + y"), 2)) == "x^2 + 2*x*y + y^2"; }},
      {"gb.contains-one", "(1 + 2xy)(1 - 2xy) + 4y^2 x^2 = 1 puts 1 in the ideal",
       [] {
         const std::vector<Polynomial> gens{P("1 + 2*x*y"), P("x^2")};
         return contains_one(gens) && P("1 + 2*x*y") * P("1 - 2*x*y") + P("4*y^2") * P("x^2") == P("1");
       }},
      {"gb.basis-order", "reduced basis of (x + y, x - y) is {y, x}",
       [] {
         const std::vector<Polynomial> gens{P("x + y"), P("x - y")};
         const auto b = buchberger(gens);
         return b.size() == 2 && b[0] == P("y") && b[1] == P("x");
       }},
      {"gb.singular-pair", "S(1 + 2xy, x^2) = x/2 is a singular reduction",
       [] {
         return classify_reduction(P("1 + 2*x*y"), P("x^2")) == ReductionKind::singular &&
                s_polynomial(P("x^2"), P("1 + 2*x*y")).value == P("1/2*x") * P("-1");
       }},
      {"tame.shear", "(x + y^2, y) is one shear", [] {
         auto v = decompose_automorphism(P("x + y^2"), P("y"));
         return v.automorphism && v.decomposition.steps.size() == 1 &&
                std::holds_alternative<Shear>(v.decomposition.steps[0].factor);
       }},
      {"tame.univar-t2-t3", "(t^2, t^3) does not generate K[t]",
       [] { return !is_univariate_generating_pair(T("t^2"), T("t^3")).generating; }},
      {"tame.univar-t2+t", "(t^2 + t, t^2) generates K[t]",
       [] { return is_univariate_generating_pair(T("t^2 + t"), T("t^2")).generating; }},
      {"coord.unimodular", "x + x^2 y has unimodular gradient", [] { return unimodular_gradient(P("x + x^2*y")); }},
      {"coord.stuck", "elementary reduction of (1 + 2xy, x^2) gets stuck",
       [] { return !elementary_reduce_gradient(P("x + x^2*y")).reached; }},
      {"coord.not-coordinate", "x + x^2 y is not a coordinate",
       [] {
         auto v = is_coordinate(P("x + x^2*y"));
         return !v.coordinate && v.reason == NotCoordinateReason::reduction_stuck;
       }},
      {"coord.conjecture-g", "one singular step S(1 + 2xy, x^2) = x/2, then regular steps to (1, 0)",
       [] {
         auto v = conjecture_g_search(P("x + x^2*y"), 10);
         if (!v.found || v.singular_steps != 1 || v.witness.empty()) return false;
         const PolyRow2 start = gradient(P("x + x^2*y"));
         const PolyRow2 after = apply_step(start, v.witness[0].step);
         return std::holds_alternative<SingularStep>(v.witness[0].step) && after[1] == P("1/2*x") &&
                is_one_zero(replay(start, v.witness));
       }},
      {"coord.shear-coordinate", "x + y^2 is a coordinate with a verified certificate",
       [] {
         auto v = is_coordinate(P("x + y^2"));
         return v.coordinate && verify_certificate(P("x + y^2"), *v.certificate);
       }},
      {"retract.verify", "(x + y x^2, 0) is a retraction onto K[x + x^2 y]",
       [] {
         auto v = verify_retraction(parse_polymap("(x + y*x^2, 0)"));
         return v.retraction && v.certificate->generator && *v.certificate->generator == P("x + x^2*y");
       }},
      {"retract.normal-form", "q = x^2 gives the retraction (x + x^2 y, 0)",
       [] { return normal_form_retraction(P("x^2")).phi == parse_polymap("(x + x^2*y, 0)"); }},
      {"retract.witness", "p = x + x^2 y goes to x under (x, 0)",
       [] {
         auto w = retract_witness_search(P("x + x^2*y"), 2);
         return w.found && w.a == P("x") && w.b.is_zero();
       }},
      {"fg.primitive", "x1 x1 x2 is primitive", [] { return fg::is_primitive(fg::parse_word("x1 x1 x2", 2)).primitive; }},
      {"fg.not-auto", "(x1^2, x2) is not an automorphism",
       [] { return !fg::is_free_automorphism(fg::parse_tuple("(x1^2, x2)", 2)).automorphism; }},
      {"cli.coord-check", "coord check \"x + x^2*y\" exits 1",
       [] { return exit_code({"coord", "check", "x + x^2*y"}) == kExitNo; }},
      {"cli.tame-decompose", "tame decompose \"x + y^2\" \"y\" exits 0",
       [] { return exit_code({"tame", "decompose", "x + y^2", "y"}) == kExitYes; }},
  };
  return cases;
}

}  // namespace combalg::cli

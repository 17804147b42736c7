#include <doctest.h>

#include "combalg/coordinate.hpp"
#include "combalg/linalg.hpp"
#include "combalg/poly_io.hpp"

using namespace combalg;

namespace {

Polynomial P(const char* s) { return parse_polynomial(s, 2); }
const PolyRow2 kOneZero{Polynomial::constant(2, 1), Polynomial(2)};

/// Independent completion: solve Jac(p, q) = c for q of degree <= deg p with c != 0.
std::optional<Polynomial> completion_by_linear_system(const Polynomial& p) {
  const int n = p.degree();
  std::vector<Monomial> monos;
  for (int d = 0; d <= n; ++d)
    for (int i = d; i >= 0; --i) monos.push_back(Monomial{static_cast<Exponent>(i), static_cast<Exponent>(d - i)});
  const Polynomial px = partial_derivative(p, 0), py = partial_derivative(p, 1);
  // Unknowns: coefficients of q, then c. Equation: px*qy - py*qx - c = 0.
  std::map<std::vector<Exponent>, SparseRow> rows;
  auto key = [](const Monomial& m) { return std::vector<Exponent>{m[0], m[1]}; };
  for (std::size_t j = 0; j < monos.size(); ++j) {
    Polynomial q = Polynomial::term(1, monos[j]);
    Polynomial col = px * partial_derivative(q, 1) - py * partial_derivative(q, 0);
    for (const Term& t : col.terms()) rows[key(t.mono)][j] += t.coeff;
  }
  rows[key(Monomial(2))][monos.size()] -= 1;
  EchelonForm e(monos.size() + 1);
  for (auto& [k, row] : rows) e.add_row(row);
  for (const auto& v : e.nullspace()) {
    if (sgn(v.back()) == 0) continue;
    std::vector<Term> terms;
    for (std::size_t j = 0; j < monos.size(); ++j) terms.push_back({v[j], monos[j]});
    return Polynomial::from_terms(2, std::move(terms));
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("unimodular gradient") {
  CHECK(unimodular_gradient(P("x + x^2*y")));
  CHECK_FALSE(unimodular_gradient(P("x^2")));
  CHECK(unimodular_gradient(P("x")));
  CHECK_FALSE(unimodular_gradient(P("7")));
}

TEST_CASE("elementary gradient reduction") {
  auto a = elementary_reduce_gradient(P("x + y^2"));
  REQUIRE(a.reached);
  CHECK(row_times(gradient(P("x + y^2")), a.matrix.product()) == kOneZero);
  CHECK(a.trace.size() == 1);
  const auto& step = std::get<RegularStep>(a.trace[0].step);
  CHECK(step.target == 1);
  CHECK(step.r == P("2*y"));

  auto b = elementary_reduce_gradient(P("x + x^2*y"));
  CHECK_FALSE(b.reached);
  CHECK(b.final_pair == gradient(P("x + x^2*y")));

  auto c = elementary_reduce_gradient(P("x"));
  REQUIRE(c.reached);
  CHECK(c.trace.empty());
  CHECK(c.matrix.factors().empty());
}

TEST_CASE("coordinate detection") {
  auto a = is_coordinate(P("x + y^2"));
  REQUIRE(a.coordinate);
  CHECK(verify_certificate(P("x + y^2"), *a.certificate));
  auto b = is_coordinate(P("x + x^2*y"));
  CHECK_FALSE(b.coordinate);
  CHECK(b.reason == NotCoordinateReason::reduction_stuck);
  CHECK(is_coordinate(P("y")).coordinate);
  CHECK(is_coordinate(P("x^2")).reason == NotCoordinateReason::gradient_not_unimodular);
  CHECK(is_coordinate(P("x*y")).reason == NotCoordinateReason::gradient_not_unimodular);
  CHECK(is_coordinate(P("y + (x + y^2)^3")).coordinate);
  CHECK(is_coordinate(P("3*x - 2*y + 5")).coordinate);
}

TEST_CASE("completion") {
  CHECK(complete_to_basis(P("x")) == P("y"));
  CHECK(complete_to_basis(P("x + y^2")) == P("y"));
  CHECK(complete_to_basis(P("y")) == P("x"));
  CHECK(jacobian_det(PolyMap({P("y"), complete_to_basis(P("y"))})) == P("-1"));
  CHECK_THROWS_AS(complete_to_basis(P("x + x^2*y")), std::invalid_argument);
}

TEST_CASE("reduction to x") {
  auto a = reduce_to_x1(P("x + y^2"));
  REQUIRE(a.steps.size() == 1);
  CHECK(std::get<Shear>(a.steps[0].factor).f == P("-y^2"));
  CHECK(reduce_to_x1(P("x")).steps.empty());
}

TEST_CASE("tame images of x") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto r = random_tame_automorphism(seed, 5, TameBounds{3, 2, 30});
    const Polynomial p = r.map[0];
    auto v = is_coordinate(p);
    REQUIRE(v.coordinate);
    CHECK(verify_certificate(p, *v.certificate));
    CHECK(v.certificate->q.degree() <= std::max(1, p.degree()));
    // Unimodularity is invariant under automorphisms.
    CHECK(unimodular_gradient(p));
    if (p.degree() <= 6) {
      auto q = completion_by_linear_system(p);
      REQUIRE(q);
      CHECK(is_jacobian_unit(PolyMap({p, *q})));
    }
    const int d0 = max_degree(gradient(p));
    auto rounds = round_degrees(d0, v.reduction.trace);
    CHECK(rounds.size() <= static_cast<std::size_t>(std::max(d0, 0)));
    int prev = d0;
    for (int d : rounds) {
      CHECK(d < prev);
      prev = d;
    }
    const Polynomial xy = substitute(P("x*y"), r.map);
    if (!unimodular_gradient(xy)) CHECK_FALSE(is_coordinate(xy).coordinate);
  }
}

TEST_CASE("conjecture G harness") {
  auto a = conjecture_g_search(P("x + x^2*y"), 10);
  REQUIRE(a.found);
  CHECK(a.singular_steps == 1);
  const auto& s = std::get<SingularStep>(a.witness[0].step);
  CHECK(s.target == 1);
  PolyRow2 after = apply_step(gradient(P("x + x^2*y")), a.witness[0].step);
  CHECK(after[1] == P("1/2*x"));
  CHECK(replay(gradient(P("x + x^2*y")), a.witness) == kOneZero);

  auto b = conjecture_g_search(P("x + y^2"), 0);
  CHECK(b.found);
  CHECK(b.singular_steps == 0);
  CHECK_FALSE(conjecture_g_search(P("x + x^2*y"), 0).found);
  CHECK_THROWS_AS(conjecture_g_search(P("x^2"), 5), std::invalid_argument);
}

#include <doctest.h>

#include <random>

#include "combalg/poly_io.hpp"
#include "combalg/polynomial.hpp"
#include "support.hpp"

using namespace combalg;

namespace {
Polynomial P(const char* s) { return parse_polynomial(s, 2); }
}  // namespace

TEST_CASE("arithmetic vectors") {
  CHECK(P("x + y") + P("x - y") == P("2*x"));
  CHECK((P("x + y") * Polynomial(2)).is_zero());
  CHECK(pow(P("x + y"), 2) == P("x^2 + 2*x*y + y^2"));
}

TEST_CASE("leading term under deglex") {
  auto lt = P("2*x*y + 1").leading_term();
  CHECK(lt.coeff == 2);
  CHECK(lt.mono == Monomial{1, 1});
  CHECK(P("x^2 + x*y").leading_monomial() == Monomial{2, 0});
  CHECK(P("y^3 + x^2").leading_monomial() == Monomial{0, 3});
  CHECK_THROWS_AS(Polynomial(2).leading_term(), std::domain_error);
}

TEST_CASE("partial derivatives of x + x^2 y") {
  Polynomial p = P("x + x^2*y");
  CHECK(partial_derivative(p, 0) == P("1 + 2*x*y"));
  CHECK(partial_derivative(p, 1) == P("x^2"));
  CHECK(partial_derivative(P("y"), 0).is_zero());
}

TEST_CASE("substitution and composition") {
  CHECK(substitute(P("x + y^2"), PolyMap::identity(2)) == P("x + y^2"));
  CHECK(substitute(P("x"), parse_polymap("(x + y^2, y)")) == P("x + y^2"));
  CHECK(compose(parse_polymap("(x + y^2, y)"), parse_polymap("(x - y^2, y)")) == PolyMap::identity(2));
  PolyMap phi = parse_polymap("(x + y^3, 2*y - x)"), psi = parse_polymap("(x*y + 1, y^2 - x)");
  Polynomial p = P("x^2*y - 3*y + 1/2");
  CHECK(substitute(p, compose(phi, psi)) == substitute(substitute(p, phi), psi));
}

TEST_CASE("jacobian") {
  CHECK(jacobian_det(parse_polymap("(x + y^2, y)")) == P("1"));
  CHECK(is_jacobian_unit(parse_polymap("(x + y^2, y)")));
  CHECK(jacobian_det(parse_polymap("(x + x^2*y, y)")) == P("1 + 2*x*y"));
  CHECK_FALSE(is_jacobian_unit(parse_polymap("(x + x^2*y, y)")));
  CHECK(jacobian_det(parse_polymap("(x^2, y)")) == P("2*x"));
  CHECK_THROWS_AS(jacobian(PolyMap::identity(3)), std::invalid_argument);
}

TEST_CASE("division") {
  std::vector<Polynomial> d1{P("x")};
  auto r1 = divide(P("x^2"), d1);
  CHECK(r1.quotients[0] == P("x"));
  CHECK(r1.remainder.is_zero());
  std::vector<Polynomial> d2{P("x^2")};
  auto r2 = divide(P("2*x*y + 1"), d2);
  CHECK(r2.quotients[0].is_zero());
  CHECK(r2.remainder == P("2*x*y + 1"));
  std::vector<Polynomial> d3{P("2*x*y + 1"), P("x^2")};
  auto r3 = divide(P("x^2*y"), d3);
  CHECK(deglex_compare(r3.remainder.leading_monomial(), Monomial{2, 1}) < 0);
  CHECK(r3.quotients[0] * d3[0] + r3.quotients[1] * d3[1] + r3.remainder == P("x^2*y"));
}

TEST_CASE("leading form") {
  CHECK(P("x + x^2*y").leading_form() == P("x^2*y"));
  CHECK(P("x^2 + 2*x*y + y^2 + x").leading_form() == pow(P("x + y"), 2));
  CHECK(P("5").leading_form() == P("5"));
}

TEST_CASE("parse and format") {
  CHECK(P("x + x^2*y") == P("x") + P("x^2") * P("y"));
  Polynomial q = P("3/2*x - 1");
  CHECK(q.coefficient(Monomial{1, 0}) == Rational(3, 2));
  CHECK(format(P("x^2")) == "x^2");
  CHECK(format(P("1 + x + x^2*y - 3/2*y")) == "x^2*y + x - 3/2*y + 1");
  CHECK(parse_polynomial("x1 + x2^2", 2) == P("x + y^2"));
  CHECK(parse_polynomial("t^2 + 1", 1).degree() == 2);
  CHECK_THROWS_AS(P("x + * y"), ParseError);
  try {
    P("x + z");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Polynomial a = testing::random_polynomial(rng, 2, 4, 5), b = testing::random_polynomial(rng, 2, 4, 5),
               c = testing::random_polynomial(rng, 2, 3, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK(parse_polynomial(format(a), 2) == a);
    if (!a.is_zero() && !b.is_zero()) {
      const Term ta = a.leading_term(), tb = b.leading_term(), tab = (a * b).leading_term();
      CHECK(tab.coeff == ta.coeff * tb.coeff);
      CHECK(tab.mono == ta.mono * tb.mono);
    }
    for (std::size_t v = 0; v < 2; ++v)
      CHECK(partial_derivative(a * b, v) == partial_derivative(a, v) * b + a * partial_derivative(b, v));
    std::vector<Polynomial> divs{b, c};
    std::erase_if(divs, [](const Polynomial& p) { return p.is_zero(); });
    auto dr = divide(a, divs);
    Polynomial back = dr.remainder;
    for (std::size_t k = 0; k < divs.size(); ++k) back += dr.quotients[k] * divs[k];
    CHECK(back == a);
    for (const Term& t : dr.remainder.terms())
      for (const Polynomial& d : divs) CHECK_FALSE(d.leading_monomial().divides(t.mono));
  }
}

TEST_CASE("deglex is a total order compatible with multiplication") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Exponent> e(0, 4);
  for (int trial = 0; trial < 500; ++trial) {
    Monomial a{e(rng), e(rng), e(rng)}, b{e(rng), e(rng), e(rng)}, m{e(rng), e(rng), e(rng)};
    auto ab = deglex_compare(a, b);
    CHECK((ab == 0) == (a == b));
    CHECK(deglex_compare(b, a) == (0 <=> ab));
    CHECK(deglex_compare(a * m, b * m) == ab);
  }
}

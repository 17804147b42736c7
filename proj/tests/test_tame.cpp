#include <doctest.h>

#include "combalg/poly_io.hpp"
#include "combalg/tame.hpp"

using namespace combalg;

namespace {
Polynomial P(const char* s) { return parse_polynomial(s, 2); }
Polynomial T(const char* s) { return parse_polynomial(s, 1); }
PolyMap M(const char* s) { return parse_polymap(s, 2); }
}  // namespace

TEST_CASE("decomposition vectors") {
  auto a = decompose_automorphism(P("x + y^2"), P("y"));
  REQUIRE(a.automorphism);
  REQUIRE(a.decomposition.steps.size() == 1);
  CHECK(std::get<Shear>(a.decomposition.steps[0].factor).f == P("y^2"));
  CHECK(*a.decomposition.steps[0].d == 2);
  CHECK(*a.decomposition.steps[0].mu == 1);

  auto b = decompose_automorphism(P("y"), P("x"));
  REQUIRE(b.automorphism);
  REQUIRE(b.decomposition.steps.size() == 1);
  CHECK(std::holds_alternative<Swap>(b.decomposition.steps[0].factor));

  auto c = decompose_automorphism(P("x + x*y"), P("y"));
  CHECK_FALSE(c.automorphism);
  CHECK(c.reason == RejectReason::leading_form_mismatch);

  CHECK(decompose_automorphism(P("x^2"), P("y^3")).reason == RejectReason::degree_ratio_not_integer);
  CHECK(decompose_automorphism(P("3"), P("y")).reason == RejectReason::component_constant);
  CHECK(decompose_automorphism(P("x + y"), P("2*x + 2*y + 1")).reason == RejectReason::linear_part_singular);
  CHECK_THROWS_AS(decompose_automorphism(T("t"), T("t")), std::invalid_argument);
}

TEST_CASE("affine maps") {
  for (const char* text : {"(2*x - y + 3, x + 5)", "(x + 1, y - 2)", "(y + 7, x)", "(x, y + 1)", "(-x, y)"}) {
    PolyMap phi = M(text);
    auto v = decompose_automorphism(phi[0], phi[1]);
    REQUIRE(v.automorphism);
    CHECK(compose_factors(v.decomposition) == phi);
  }
}

TEST_CASE("inversion") {
  Decomposition shear{{{Shear{P("y^2")}, {}, {}}}};
  CHECK(invert_automorphism(shear) == M("(x - y^2, y)"));
  Linear l;
  l.m = {{{2, 1}, {1, 1}}};
  Decomposition lin{{{l, {}, {}}}};
  CHECK(invert_automorphism(lin) == M("(x - y, -x + 2*y)"));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto r = random_tame_automorphism(seed, 4);
    PolyMap inv = invert_automorphism(r.decomposition);
    CHECK(compose(r.map, inv) == PolyMap::identity(2));
    CHECK(compose(inv, r.map) == PolyMap::identity(2));
  }
}

TEST_CASE("random tame generator") {
  CHECK(random_tame_automorphism(5, 0).map == PolyMap::identity(2));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto r = random_tame_automorphism(seed, 6, TameBounds{3, 3, 64});
    CHECK(r.map.degree() <= 64);
    CHECK(compose_factors(r.decomposition) == r.map);
    CHECK(random_tame_automorphism(seed, 6).map == r.map);
  }
}

TEST_CASE("round trip and degree law") {
  for (std::uint64_t seed = 100; seed < 300; ++seed) {
    auto r = random_tame_automorphism(seed, 6);
    auto v = decompose_automorphism(r.map[0], r.map[1]);
    REQUIRE(v.automorphism);
    CHECK(compose_factors(v.decomposition) == r.map);
    CHECK(is_jacobian_unit(r.map));

    // Replay the reduction: each leading-form step strictly lowers deg g1 + deg g2,
    // and no other scalar cancels the leading form.
    std::array<Polynomial, 2> g{r.map[0], r.map[1]};
    for (const auto& step : v.decomposition.steps) {
      const int before = g[0].degree() + g[1].degree();
      PolyMap inv = to_map(inverse(step.factor));
      PolyMap next = compose(inv, PolyMap({g[0], g[1]}));
      if (step.mu) {
        CHECK(next[0].degree() + next[1].degree() < before);
        Rational other = *step.mu + 1;
        Polynomial alt = g[0] - other * pow(g[1], *step.d);
        CHECK(alt.degree() == g[0].degree());
      }
      g = {next[0], next[1]};
    }

    // Multiplying a component by x or squaring it destroys invertibility.
    CHECK_FALSE(decompose_automorphism(r.map[0] * P("x"), r.map[1]).automorphism);
    CHECK_FALSE(decompose_automorphism(r.map[0], pow(r.map[1], 2)).automorphism);
  }
}

TEST_CASE("univariate generating pairs") {
  auto a = is_univariate_generating_pair(T("t^2"), T("t^3"));
  CHECK_FALSE(a.generating);
  CHECK(a.final_degrees == std::array<int, 2>{2, 3});
  CHECK(is_univariate_generating_pair(T("t^2 + 1"), T("t")).generating);
  auto c = is_univariate_generating_pair(T("t^2 + t"), T("t^2"));
  CHECK(c.generating);
  REQUIRE(c.trace.size() == 1);
  CHECK(c.trace[0].mu == 1);
  CHECK_FALSE(is_univariate_generating_pair(T("3"), T("5")).generating);
  CHECK(is_univariate_generating_pair(T("t^4 + t"), T("t^2")).generating);
  CHECK_FALSE(is_univariate_generating_pair(T("t^4 + t^3"), T("t^2")).generating);
  CHECK(is_univariate_generating_pair(T("(t^2 + t)^3 + t^2 + t + t"), T("t^2 + t")).generating);
}

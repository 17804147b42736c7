#include "combalg/tame.hpp"

#include <random>
#include <stdexcept>

#include "combalg/poly_io.hpp"

namespace combalg {

namespace {

constexpr std::size_t kX = 0, kY = 1;

Polynomial var(std::size_t i) { return Polynomial::variable(2, i); }

bool depends_only_on_y(const Polynomial& f) {
  for (const Term& t : f.terms())
    if (t.mono[kX] != 0) return false;
  return true;
}

Rational det(const Linear& l) { return l.m[0][0] * l.m[1][1] - l.m[0][1] * l.m[1][0]; }

/// E o G computed directly from the images of G.
std::array<Polynomial, 2> apply_left(const ElementaryFactor& e, const std::array<Polynomial, 2>& g) {
  if (const auto* l = std::get_if<Linear>(&e)) {
    return {l->m[0][0] * g[0] + l->m[0][1] * g[1], l->m[1][0] * g[0] + l->m[1][1] * g[1]};
  }
  if (const auto* s = std::get_if<Shear>(&e)) {
    // f(g2) by Horner in g2.
    Polynomial acc(2);
    int deg = s->f.degree();
    for (int k = deg; k >= 0; --k) {
      acc *= g[1];
      Rational c = s->f.coefficient(Monomial::variable(2, kY, static_cast<Exponent>(k)));
      if (sgn(c) != 0) acc += Polynomial::constant(2, c);
    }
    return {g[0] + acc, g[1]};
  }
  return {g[1], g[0]};
}

std::array<Polynomial, 2> identity_pair() { return {var(kX), var(kY)}; }

}  // namespace

void validate(const ElementaryFactor& f) {
  if (const auto* l = std::get_if<Linear>(&f)) {
    if (sgn(det(*l)) == 0) throw std::invalid_argument("singular linear factor");
  } else if (const auto* s = std::get_if<Shear>(&f)) {
    if (s->f.nvars() != 2 || !depends_only_on_y(s->f)) throw std::invalid_argument("shear polynomial must lie in K[y]");
  }
}

PolyMap to_map(const ElementaryFactor& f) {
  auto p = apply_left(f, identity_pair());
  return PolyMap({p[0], p[1]});
}

ElementaryFactor inverse(const ElementaryFactor& f) {
  if (const auto* l = std::get_if<Linear>(&f)) {
    Rational d = det(*l);
    if (sgn(d) == 0) throw std::invalid_argument("singular linear factor");
    Linear inv;
    inv.m[0][0] = l->m[1][1] / d;
    inv.m[0][1] = -l->m[0][1] / d;
    inv.m[1][0] = -l->m[1][0] / d;
    inv.m[1][1] = l->m[0][0] / d;
    return inv;
  }
  if (const auto* s = std::get_if<Shear>(&f)) return Shear{-s->f};
  return Swap{};
}

std::string format(const ElementaryFactor& f) {
  if (const auto* l = std::get_if<Linear>(&f)) {
    return "Linear [[" + to_string(l->m[0][0]) + ", " + to_string(l->m[0][1]) + "], [" + to_string(l->m[1][0]) +
           ", " + to_string(l->m[1][1]) + "]]";
  }
  if (const auto* s = std::get_if<Shear>(&f)) return "Shear f = " + format(s->f);
  return "Swap";
}

PolyMap compose_factors(const Decomposition& d) {
  auto g = identity_pair();
  for (auto it = d.steps.rbegin(); it != d.steps.rend(); ++it) g = apply_left(it->factor, g);
  return PolyMap({g[0], g[1]});
}

Polynomial apply_factors(const Polynomial& p, const Decomposition& d) {
  Polynomial cur = p;
  for (const auto& step : d.steps) cur = substitute(cur, to_map(step.factor));
  return cur;
}

Decomposition inverse(const Decomposition& d) {
  Decomposition inv;
  for (auto it = d.steps.rbegin(); it != d.steps.rend(); ++it) inv.steps.push_back({inverse(it->factor), {}, {}});
  return inv;
}

PolyMap invert_automorphism(const Decomposition& d) { return compose_factors(inverse(d)); }

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::component_constant:
      return "component constant";
    case RejectReason::degree_ratio_not_integer:
      return "degree ratio not an integer";
    case RejectReason::leading_form_mismatch:
      return "leading form mismatch";
    case RejectReason::linear_part_singular:
      return "linear part singular";
  }
  return "";
}

TameVerdict decompose_automorphism(const Polynomial& g1, const Polynomial& g2) {
  if (g1.nvars() != 2 || g2.nvars() != 2) throw std::invalid_argument("automorphism test needs two variables");
  TameVerdict v;
  std::array<Polynomial, 2> g{g1, g2};
  auto push = [&](ElementaryFactor e, std::optional<Rational> mu = {}, std::optional<unsigned> d = {}) {
    g = apply_left(inverse(e), g);
    v.decomposition.steps.push_back({std::move(e), std::move(mu), d});
  };
  auto reject = [&](RejectReason r) {
    v.reason = r;
    v.residual = g;
    return v;
  };

  for (;;) {
    if (g[0].is_constant() || g[1].is_constant()) return reject(RejectReason::component_constant);
    const int a = g[0].degree(), b = g[1].degree();
    if (a <= 1 && b <= 1) break;
    if (a < b) {
      push(Swap{});
      continue;
    }
    const unsigned d = static_cast<unsigned>(a / b);
    if (a % b != 0) return reject(RejectReason::degree_ratio_not_integer);
    const Polynomial lf2 = g[1].leading_form();
    const Polynomial target = d == 1 ? lf2 : pow(lf2, d);
    const Rational mu = g[0].leading_coefficient() / target.leading_coefficient();
    if (!(g[0].leading_form() == mu * target)) return reject(RejectReason::leading_form_mismatch);
    if (d == 1) {
      Linear mix;
      mix.m = {{{1, mu}, {0, 1}}};
      push(mix, mu, d);
    } else {
      push(Shear{mu * pow(var(kY), d)}, mu, d);
    }
  }

  // Affine remainder: g = (a x + b y + c1, c x + d y + c2) = T o L.
  Linear lin;
  Rational c[2];
  for (std::size_t i = 0; i < 2; ++i) {
    lin.m[i][0] = g[i].coefficient(Monomial::variable(2, kX));
    lin.m[i][1] = g[i].coefficient(Monomial::variable(2, kY));
    c[i] = g[i].coefficient(Monomial(2));
  }
  if (sgn(det(lin)) == 0) return reject(RejectReason::linear_part_singular);
  if (sgn(c[1]) != 0) {
    if (sgn(c[0]) != 0) push(Shear{Polynomial::constant(2, c[0])});
    push(Swap{});
    push(Shear{Polynomial::constant(2, c[1])});
    push(Swap{});
  } else if (sgn(c[0]) != 0) {
    push(Shear{Polynomial::constant(2, c[0])});
  }
  const bool is_identity = lin.m[0][0] == 1 && lin.m[1][1] == 1 && sgn(lin.m[0][1]) == 0 && sgn(lin.m[1][0]) == 0;
  const bool is_swap = lin.m[0][1] == 1 && lin.m[1][0] == 1 && sgn(lin.m[0][0]) == 0 && sgn(lin.m[1][1]) == 0;
  if (is_swap)
    push(Swap{});
  else if (!is_identity)
    push(lin);

  if (!(g == identity_pair()) || !(compose_factors(v.decomposition) == PolyMap({g1, g2})))
    throw std::logic_error("decomposition does not recompose to the input");
  v.automorphism = true;
  return v;
}

// ---------------------------------------------------------------------------

UnivariateVerdict is_univariate_generating_pair(const Polynomial& u, const Polynomial& v) {
  if (u.nvars() != 1 || v.nvars() != 1) throw std::invalid_argument("univariate pair expected");
  UnivariateVerdict out;
  std::array<Polynomial, 2> e{u, v};
  auto finish = [&](bool generating) {
    out.generating = generating;
    out.final_degrees = {e[0].degree(), e[1].degree()};
    out.final_pair = e;
    return out;
  };
  for (;;) {
    const bool c0 = e[0].is_constant(), c1 = e[1].is_constant();
    if (c0 && c1) return finish(false);
    if (c0 || c1) return finish(e[c0 ? 1 : 0].degree() == 1);
    if (e[0].degree() == 1 || e[1].degree() == 1) return finish(true);
    const std::size_t hi = e[0].degree() >= e[1].degree() ? 0 : 1, lo = 1 - hi;
    const int n = e[hi].degree(), m = e[lo].degree();
    if (n % m != 0) return finish(false);
    const unsigned k = static_cast<unsigned>(n / m);
    const Rational mu = e[hi].leading_coefficient() / (k == 1 ? e[lo].leading_coefficient()
                                                              : pow(e[lo], k).leading_coefficient());
    e[hi] -= mu * pow(e[lo], k);
    out.trace.push_back({hi, mu, k});
  }
}

// ---------------------------------------------------------------------------

RandomTame random_tame_automorphism(std::uint64_t seed, unsigned k, const TameBounds& bounds) {
  if (bounds.max_factor_degree < 1 || bounds.max_coefficient < 1)
    throw std::invalid_argument("random tame bounds must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-bounds.max_coefficient, bounds.max_coefficient);
  std::vector<ElementaryFactor> factors;

  auto random_linear = [&]() {
    for (;;) {
      Linear l;
      for (auto& row : l.m)
        for (auto& x : row) x = coef(rng);
      if (sgn(det(l)) != 0) return l;
    }
  };
  auto random_shear = [&](unsigned max_deg) {
    unsigned deg = std::uniform_int_distribution<unsigned>(1, max_deg)(rng);
    std::vector<Term> terms;
    for (unsigned e = 0; e <= deg; ++e) {
      int c = coef(rng);
      if (e == deg)
        while (c == 0) c = coef(rng);
      terms.push_back({Rational(c), Monomial::variable(2, kY, e)});
    }
    return Shear{Polynomial::from_terms(2, std::move(terms))};
  };

  // Factors are drawn left to right; the map is built as F = E1 o ... o Ek by
  // composing from the right end, so draw all first and then check degrees.
  for (unsigned i = 0; i < k; ++i) {
    if (std::bernoulli_distribution(0.5)(rng))
      factors.push_back(random_linear());
    else
      factors.push_back(random_shear(bounds.max_factor_degree));
  }
  auto g = identity_pair();
  for (std::size_t i = factors.size(); i-- > 0;) {
    auto next = apply_left(factors[i], g);
    unsigned max_deg = bounds.max_factor_degree;
    while (static_cast<unsigned>(std::max(next[0].degree(), next[1].degree())) > bounds.degree_cap) {
      // Redraw a smaller shear; degree-1 shears and linear factors never raise the degree.
      max_deg = std::max(1u, max_deg - 1);
      factors[i] = random_shear(max_deg);
      next = apply_left(factors[i], g);
    }
    g = std::move(next);
  }
  RandomTame out;
  out.map = PolyMap({g[0], g[1]});
  for (auto& f : factors) out.decomposition.steps.push_back({std::move(f), {}, {}});
  return out;
}

}  // namespace combalg

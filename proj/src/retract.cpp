#include "combalg/retract.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "combalg/coordinate.hpp"
#include "combalg/groebner.hpp"
#include "combalg/linalg.hpp"

namespace combalg {

namespace {

constexpr std::size_t kX = 0, kY = 1;

Polynomial var(std::size_t i) { return Polynomial::variable(2, i); }

void require_plane_map(const PolyMap& phi) {
  if (phi.arity() != 2 || phi.codomain_nvars() != 2) throw std::invalid_argument("map of K[x, y] expected");
}

/// Generator h with K[u, v] = K[h], found by cancelling leading forms, or nothing.
std::optional<Polynomial> subalgebra_generator(Polynomial u, Polynomial v) {
  for (;;) {
    if (u.is_constant()) return v.is_constant() ? std::nullopt : std::optional<Polynomial>(v);
    if (v.is_constant()) return u;
    if (u.degree() < v.degree()) std::swap(u, v);
    const int a = u.degree(), b = v.degree();
    if (a % b != 0) return std::nullopt;
    const unsigned e = static_cast<unsigned>(a / b);
    const Polynomial power = e == 1 ? v.leading_form() : pow(v.leading_form(), e);
    const Rational mu = u.leading_coefficient() / power.leading_coefficient();
    if (!(u.leading_form() == mu * power)) return std::nullopt;
    u -= mu * pow(v, e);
  }
}

bool in_subalgebra_of(Polynomial f, const Polynomial& h) {
  while (!f.is_constant()) {
    const int a = f.degree(), b = h.degree();
    if (a % b != 0) return false;
    const Polynomial power = pow(h, static_cast<unsigned>(a / b));
    const Rational mu = f.leading_coefficient() / power.leading_coefficient();
    if (!(f.leading_form() == mu * power.leading_form())) return false;
    f -= mu * power;
  }
  return true;
}

std::vector<Monomial> monomials_up_to(unsigned degree) {
  std::vector<Monomial> out;
  for (unsigned d = 0; d <= degree; ++d)
    for (unsigned i = 0; i <= d; ++i) out.push_back(Monomial{i, d - i});
  return out;
}

}  // namespace

std::string to_string(ImageKind k) {
  switch (k) {
    case ImageKind::whole_algebra:
      return "whole algebra";
    case ImageKind::constants:
      return "constants";
    case ImageKind::generated_by:
      return "generated by one polynomial";
    case ImageKind::generator_not_located:
      return "proper retract, generator not located";
  }
  return "";
}

RetractionVerdict verify_retraction(const PolyMap& phi) {
  require_plane_map(phi);
  RetractionVerdict v;
  const PolyMap twice = compose(phi, phi);
  if (!(twice == phi)) return v;
  Retraction r;
  r.phi = phi;
  r.idempotence = {twice[0], twice[1]};
  if (phi == PolyMap::identity(2)) {
    r.image = ImageKind::whole_algebra;
  } else if (phi[0].is_constant() && phi[1].is_constant()) {
    r.image = ImageKind::constants;
  } else if (auto h = subalgebra_generator(phi[0], phi[1]); h && substitute(*h, phi) == *h) {
    r.image = ImageKind::generated_by;
    r.generator = std::move(*h);
  } else {
    // Low-degree fixed polynomials h with phi(x), phi(y) in K[h].
    for (const Polynomial& f : find_fixed_polynomials(phi, default_fixed_degree(phi))) {
      if (f.is_constant() || !in_subalgebra_of(phi[0], f) || !in_subalgebra_of(phi[1], f)) continue;
      r.image = ImageKind::generated_by;
      r.generator = f;
      break;
    }
  }
  v.retraction = true;
  v.certificate = std::move(r);
  return v;
}

Retraction normal_form_retraction(const Polynomial& q) {
  if (q.nvars() != 2) throw std::invalid_argument("q must be a polynomial in x, y");
  auto v = verify_retraction(PolyMap({var(kX) + var(kY) * q, Polynomial(2)}));
  if (!v.retraction) throw std::logic_error("normal form map is not idempotent");
  return std::move(*v.certificate);
}

// ---------------------------------------------------------------------------

namespace {

struct Candidate {
  std::vector<std::size_t> support_a, support_b;
};

/// Subsets of {0..n-1} with at most k elements, by size then lexicographically.
std::vector<std::vector<std::size_t>> small_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t size = 1; size <= k && size <= n; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      out.push_back(idx);
      std::size_t i = size;
      while (i-- > 0 && idx[i] == n - size + i) {
      }
      if (i == static_cast<std::size_t>(-1)) break;
      ++idx[i];
      for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

/// Solves p(a, b) = x for coefficients on the given supports; rational isolated solutions only.
std::optional<std::array<Polynomial, 2>> solve_support(const Polynomial& p, const std::vector<Monomial>& monos,
                                                       const Candidate& c) {
  const std::size_t m = c.support_a.size() + c.support_b.size();
  const std::size_t n = m + 2;
  auto unknown = [&](std::size_t k, const Monomial& mono) {
    Monomial e(n);
    e.set(kX, mono[kX]);
    e.set(kY, mono[kY]);
    e.set(2 + k, 1);
    return Polynomial::term(1, e);
  };
  Polynomial a(n), b(n);
  std::size_t k = 0;
  for (std::size_t i : c.support_a) a += unknown(k++, monos[i]);
  for (std::size_t i : c.support_b) b += unknown(k++, monos[i]);
  const Polynomial residual = substitute(p, PolyMap({a, b})) - Polynomial::variable(n, kX);

  // Coefficient of each x^i y^j as a polynomial in the unknowns.
  std::map<std::pair<Exponent, Exponent>, std::vector<Term>> eqs;
  for (const Term& t : residual.terms()) {
    Monomial rest(m);
    for (std::size_t u = 0; u < m; ++u) rest.set(u, t.mono[2 + u]);
    eqs[{t.mono[kX], t.mono[kY]}].push_back({t.coeff, rest});
  }
  std::vector<Polynomial> system;
  for (auto& [key, terms] : eqs) system.push_back(Polynomial::from_terms(m, std::move(terms)));
  std::vector<Rational> values(m, Rational(1));
  if (!system.empty()) {
    auto gb = buchberger(system);
    if (gb.size() == 1 && gb[0].is_constant()) return std::nullopt;
    std::vector<bool> known(m, false);
    for (const Polynomial& g : gb) {
      if (g.degree() != 1) continue;
      std::size_t nonconst = 0, which = 0;
      for (const Term& t : g.terms())
        if (!t.mono.is_one()) {
          ++nonconst;
          for (std::size_t u = 0; u < m; ++u)
            if (t.mono[u]) which = u;
        }
      if (nonconst != 1) continue;
      values[which] = -g.coefficient(Monomial(m)) / g.leading_coefficient();
      known[which] = true;
    }
    if (std::find(known.begin(), known.end(), false) != known.end()) return std::nullopt;
  }
  std::vector<Term> ta, tb;
  k = 0;
  for (std::size_t i : c.support_a) ta.push_back({values[k++], monos[i]});
  for (std::size_t i : c.support_b) tb.push_back({values[k++], monos[i]});
  return std::array<Polynomial, 2>{Polynomial::from_terms(2, std::move(ta)), Polynomial::from_terms(2, std::move(tb))};
}

constexpr std::size_t kMaxSupport = 2;

}  // namespace

RetractWitness retract_witness_search(const Polynomial& p, unsigned max_degree, std::size_t budget) {
  if (p.nvars() != 2) throw std::invalid_argument("witness search needs two variables");
  if (p.is_constant()) throw std::invalid_argument("witness search needs a nonconstant polynomial");
  RetractWitness w;
  w.degree_bound = max_degree;
  const Polynomial x = var(kX);
  auto accept = [&](Polynomial a, Polynomial b, const char* route) {
    if (!(substitute(p, PolyMap({a, b})) == x)) return false;
    w.found = true;
    w.a = std::move(a);
    w.b = std::move(b);
    w.route = route;
    return true;
  };

  if (max_degree >= 1) {
    if (accept(x, Polynomial(2), "direct")) return w;
    if (accept(Polynomial(2), x, "direct")) return w;
  }

  if (unimodular_gradient(p)) {
    auto v = is_coordinate(p);
    if (v.coordinate) {
      const PolyMap sigma = compose_factors(v.certificate->auto_sequence);
      if (sigma.degree() <= static_cast<int>(max_degree) && accept(sigma[0], sigma[1], "coordinate")) return w;
    }
  }

  const auto monos = monomials_up_to(max_degree);
  const auto subsets = small_subsets(monos.size(), kMaxSupport);
  std::vector<Candidate> candidates;
  for (const auto& sa : subsets)
    for (const auto& sb : subsets)
      if (!sa.empty() || !sb.empty()) candidates.push_back({sa, sb});
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& l, const Candidate& r) {
    return l.support_a.size() + l.support_b.size() < r.support_a.size() + r.support_b.size();
  });
  for (const Candidate& c : candidates) {
    if (w.groebner_calls >= budget) break;
    ++w.groebner_calls;
    if (auto sol = solve_support(p, monos, c); sol && accept((*sol)[0], (*sol)[1], "groebner")) return w;
  }
  return w;
}

// ---------------------------------------------------------------------------

std::vector<Polynomial> find_fixed_polynomials(const PolyMap& phi, unsigned max_degree) {
  require_plane_map(phi);
  const auto monos = monomials_up_to(max_degree);
  std::vector<Polynomial> pow_x{Polynomial::constant(2, 1)}, pow_y{Polynomial::constant(2, 1)};
  for (unsigned k = 1; k <= max_degree; ++k) {
    pow_x.push_back(pow_x.back() * phi[0]);
    pow_y.push_back(pow_y.back() * phi[1]);
  }
  std::unordered_map<Monomial, SparseRow, MonomialHash> rows;
  for (std::size_t j = 0; j < monos.size(); ++j) {
    const Monomial& m = monos[j];
    Polynomial column = pow_x[m[kX]] * pow_y[m[kY]] - Polynomial::term(1, m);
    for (const Term& t : column.terms()) rows[t.mono][j] = t.coeff;
  }
  EchelonForm e(monos.size());
  for (auto& [mono, row] : rows) e.add_row(std::move(row));

  // Reduce the kernel basis to distinct leading monomials.
  std::map<std::size_t, Polynomial> pivots;  // index of leading monomial in `monos` -> element
  auto index_of = [&](const Monomial& m) {
    const unsigned d = m.degree();
    return static_cast<std::size_t>(d * (d + 1) / 2 + m[kX]);
  };
  for (const auto& v : e.nullspace()) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < monos.size(); ++j)
      if (sgn(v[j]) != 0) terms.push_back({v[j], monos[j]});
    Polynomial f = Polynomial::from_terms(2, std::move(terms));
    while (!f.is_zero()) {
      auto it = pivots.find(index_of(f.leading_monomial()));
      if (it == pivots.end()) break;
      f -= f.leading_coefficient() * it->second;
    }
    if (!f.is_zero()) pivots.emplace(index_of(f.leading_monomial()), f.monic());
  }
  std::vector<Polynomial> basis;
  for (auto& [idx, f] : pivots) {
    for (const Polynomial& lower : basis) {
      const Rational c = f.coefficient(lower.leading_monomial());
      if (sgn(c) != 0) f -= c * lower;
    }
    basis.push_back(f);
  }
  for (const Polynomial& f : basis)
    if (!(substitute(f, phi) == f)) throw std::logic_error("fixed polynomial failed verification");
  return basis;
}

StableImageReport stable_image_diagnostics(const PolyMap& phi, unsigned k_max, unsigned fixed_degree) {
  require_plane_map(phi);
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  StableImageReport r;
  r.automorphism = decompose_automorphism(phi[0], phi[1]).automorphism;
  PolyMap iterate = phi;
  r.constant_images = true;
  for (unsigned k = 1; k <= k_max; ++k) {
    if (k > 1) iterate = compose(iterate, phi);
    r.iterate_degrees.push_back(iterate.degree());
    r.constant_images = r.constant_images && iterate[0].is_constant() && iterate[1].is_constant();
  }
  const auto fixed = find_fixed_polynomials(phi, fixed_degree);
  for (unsigned d = 0; d <= fixed_degree; ++d)
    r.fixed_dimensions.push_back(static_cast<std::size_t>(std::count_if(
        fixed.begin(), fixed.end(), [d](const Polynomial& f) { return f.degree() <= static_cast<int>(d); })));
  return r;
}

unsigned default_fixed_degree(const PolyMap& phi) {
  const int d = std::max(phi.degree(), 1);
  return std::min(static_cast<unsigned>(2 * d), kMaxDefaultFixedDegree);
}

JacobianHarnessReport jc_harness(const PolyMap& phi, std::optional<unsigned> fixed_degree) {
  require_plane_map(phi);
  JacobianHarnessReport r;
  r.jacobian_det = jacobian_det(phi);
  r.jacobian_unit = r.jacobian_det.is_constant() && !r.jacobian_det.is_zero();
  r.fixed_degree = fixed_degree.value_or(default_fixed_degree(phi));
  r.fixed = find_fixed_polynomials(phi, r.fixed_degree);
  r.nonconstant_fixed = std::any_of(r.fixed.begin(), r.fixed.end(), [](const Polynomial& f) { return !f.is_constant(); });
  auto v = decompose_automorphism(phi[0], phi[1]);
  r.automorphism = v.automorphism;
  if (v.automorphism) r.decomposition = std::move(v.decomposition);
  r.hypothesis_met = r.jacobian_unit && r.nonconstant_fixed;
  r.inconsistency = r.hypothesis_met && !r.automorphism;
  return r;
}

}  // namespace combalg

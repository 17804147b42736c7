#include "combalg/groebner.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace combalg {

SPolynomial s_polynomial(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) throw std::domain_error("S-polynomial of the zero polynomial");
  const Term& tp = p.leading_term();
  const Term& tq = q.leading_term();
  Monomial l = lcm(tp.mono, tq.mono);
  Polynomial left = p.mul_term(Rational(1) / tp.coeff, l / tp.mono);
  Polynomial value = left.sub_scaled(Rational(1) / tq.coeff, l / tq.mono, q);
  return SPolynomial{std::move(value), SPolyRecord{l, tp, tq}};
}

ReductionKind classify_reduction(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) throw std::domain_error("reduction with the zero polynomial");
  const Monomial &a = p.leading_monomial(), &b = q.leading_monomial();
  return a.divides(b) || b.divides(a) ? ReductionKind::regular : ReductionKind::singular;
}

Polynomial reduce_mod_basis(const Polynomial& p, std::span<const Polynomial> basis) {
  std::vector<Term> remainder;
  Polynomial cur = p;
  while (!cur.is_zero()) {
    const Term lt = cur.leading_term();
    const Polynomial* divisor = nullptr;
    for (const Polynomial& g : basis) {
      if (!g.is_zero() && g.leading_monomial().divides(lt.mono)) {
        divisor = &g;
        break;
      }
    }
    if (divisor) {
      cur = cur.sub_scaled(lt.coeff / divisor->leading_coefficient(), lt.mono / divisor->leading_monomial(),
                           *divisor);
    } else {
      remainder.push_back(lt);
      cur = cur.sub_scaled(lt.coeff, Monomial(p.nvars()), Polynomial::term(1, lt.mono));
    }
  }
  return Polynomial::from_terms(p.nvars(), std::move(remainder));
}

namespace {

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

bool pair_less(const Pair& a, const Pair& b) {
  auto c = deglex_compare(a.lcm, b.lcm);
  if (c != 0) return c < 0;
  return std::tie(a.i, a.j) < std::tie(b.i, b.j);
}

std::vector<Polynomial> finish(std::vector<Polynomial> g) {
  // Drop elements whose leading monomial is divisible by another's (earlier wins on ties).
  std::vector<Polynomial> minimal;
  for (std::size_t a = 0; a < g.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
      if (a == b) continue;
      const Monomial &ma = g[a].leading_monomial(), &mb = g[b].leading_monomial();
      if (mb.divides(ma) && (!(ma == mb) || b < a)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[a]);
  }
  std::vector<Polynomial> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<Polynomial> others;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (b != a) others.push_back(minimal[b]);
    reduced.push_back(reduce_mod_basis(minimal[a], others).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [](const Polynomial& a, const Polynomial& b) {
    return deglex_compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  return reduced;
}

}  // namespace

std::vector<Polynomial> buchberger(std::span<const Polynomial> generators) {
  std::vector<Polynomial> g;
  std::size_t nvars = 0;
  for (const Polynomial& p : generators) {
    nvars = p.nvars();
    if (p.is_zero()) continue;
    if (p.is_constant()) return {Polynomial::constant(p.nvars(), 1)};
    g.push_back(p.primitive());
  }
  if (g.empty()) return {};

  std::vector<Pair> pairs;
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) pairs.push_back({i, j, lcm(g[i].leading_monomial(), g[j].leading_monomial())});
  };
  for (std::size_t j = 1; j < g.size(); ++j) add_pairs_for(j);

  auto pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return std::any_of(pairs.begin(), pairs.end(), [&](const Pair& p) { return p.i == a && p.j == b; });
  };

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
    Pair pr = *it;
    pairs.erase(it);
    const Monomial &mi = g[pr.i].leading_monomial(), &mj = g[pr.j].leading_monomial();
    // Coprime leading monomials: the S-polynomial reduces to zero.
    if (gcd(mi, mj).is_one()) continue;
    // Chain criterion.
    bool skip = false;
    for (std::size_t k = 0; k < g.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (g[k].leading_monomial().divides(pr.lcm) && !pending(pr.i, k) && !pending(pr.j, k)) skip = true;
    }
    if (skip) continue;
    Polynomial r = reduce_mod_basis(s_polynomial(g[pr.i], g[pr.j]).value, g);
    if (r.is_zero()) continue;
    if (r.is_constant()) return {Polynomial::constant(nvars, 1)};
    g.push_back(r.primitive());
    add_pairs_for(g.size() - 1);
  }
  return finish(std::move(g));
}

bool contains_one(std::span<const Polynomial> generators) {
  for (const Polynomial& p : generators)
    if (!p.is_zero() && p.is_constant()) return true;
  std::vector<Polynomial> nonzero;
  for (const Polynomial& p : generators)
    if (!p.is_zero()) nonzero.push_back(p);
  if (nonzero.size() <= 1) return false;
  auto gb = buchberger(nonzero);
  return gb.size() == 1 && gb[0].is_constant();
}

// ---------------------------------------------------------------------------

PolyMatrix2 mat_mul(const PolyMatrix2& a, const PolyMatrix2& b) {
  PolyMatrix2 c;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

PolyRow2 row_times(const PolyRow2& row, const PolyMatrix2& m) {
  return {row[0] * m[0][0] + row[1] * m[1][0], row[0] * m[0][1] + row[1] * m[1][1]};
}

namespace {

PolyMatrix2 identity_matrix(std::size_t nvars) {
  return {{{Polynomial::constant(nvars, 1), Polynomial(nvars)}, {Polynomial(nvars), Polynomial::constant(nvars, 1)}}};
}

}  // namespace

PolyMatrix2 to_matrix(const GEFactor& f, std::size_t nvars) {
  PolyMatrix2 m = identity_matrix(nvars);
  if (const auto* e = std::get_if<ElementaryMatrix>(&f)) {
    if (e->row == e->col || e->row > 1 || e->col > 1) throw std::invalid_argument("bad elementary matrix position");
    m[e->row][e->col] = e->entry;
  } else {
    const auto& d = std::get<DiagonalMatrix>(f);
    if (sgn(d.d0) == 0 || sgn(d.d1) == 0) throw std::invalid_argument("singular diagonal matrix");
    m[0][0] = Polynomial::constant(nvars, d.d0);
    m[1][1] = Polynomial::constant(nvars, d.d1);
  }
  return m;
}

GEMatrix::GEMatrix(std::size_t nvars) : nvars_(nvars), product_(identity_matrix(nvars)) {}

void GEMatrix::append(GEFactor f) {
  const PolyMatrix2 m = to_matrix(f, nvars_);
  // Multiplying by an elementary or diagonal factor only touches one column.
  if (const auto* e = std::get_if<ElementaryMatrix>(&f)) {
    for (std::size_t i = 0; i < 2; ++i) product_[i][e->col] += product_[i][e->row] * e->entry;
  } else {
    product_ = mat_mul(product_, m);
  }
  factors_.push_back(std::move(f));
}

void GEMatrix::append_swap() {
  const Polynomial one = Polynomial::constant(nvars_, 1);
  append(ElementaryMatrix{0, 1, one});
  append(ElementaryMatrix{1, 0, -one});
  append(ElementaryMatrix{0, 1, one});
  append(DiagonalMatrix{-1, 1});
}

bool GEMatrix::verify() const {
  PolyMatrix2 m = identity_matrix(nvars_);
  for (const GEFactor& f : factors_) m = mat_mul(m, to_matrix(f, nvars_));
  return m == product_;
}

Polynomial GEMatrix::determinant() const {
  return product_[0][0] * product_[1][1] - product_[0][1] * product_[1][0];
}

PolyRow2 apply_step(const PolyRow2& pair, const ReductionStep& step) {
  PolyRow2 out = pair;
  if (const auto* r = std::get_if<RegularStep>(&step)) {
    if (r->target > 1 || r->source > 1 || r->target == r->source || sgn(r->alpha) == 0)
      throw std::invalid_argument("malformed regular step");
    out[r->target] = r->alpha * (pair[r->target] - r->r * pair[r->source]);
  } else if (const auto* s = std::get_if<SingularStep>(&step)) {
    if (s->target > 1) throw std::invalid_argument("malformed singular step");
    out[s->target] = s_polynomial(pair[0], pair[1]).value;
  } else if (const auto* d = std::get_if<ScaleStep>(&step)) {
    if (sgn(d->d0) == 0 || sgn(d->d1) == 0) throw std::invalid_argument("zero scale");
    out = {d->d0 * pair[0], d->d1 * pair[1]};
  } else {
    std::swap(out[0], out[1]);
  }
  return out;
}

}  // namespace combalg

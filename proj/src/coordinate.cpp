#include "combalg/coordinate.hpp"

#include <stdexcept>
#include <unordered_map>

namespace combalg {

namespace {

constexpr std::size_t kX = 0, kY = 1;

Polynomial var(std::size_t i) { return Polynomial::variable(2, i); }
Monomial mono(Exponent ex, Exponent ey) { return Monomial{ex, ey}; }

std::size_t poly_hash(const Polynomial& p) {
  std::size_t h = p.size();
  for (const Term& t : p.terms()) {
    std::size_t th = t.mono.hash();
    th ^= static_cast<std::size_t>(mpz_get_ui(t.coeff.get_num_mpz_t())) * 0x9e3779b97f4a7c15ULL;
    th ^= static_cast<std::size_t>(mpz_get_ui(t.coeff.get_den_mpz_t())) + (th << 6) + (th >> 2);
    h = h * 1000003u ^ th;
  }
  return h;
}

bool is_reached(const PolyRow2& pair) {
  return (pair[1].is_zero() && !pair[0].is_zero() && pair[0].is_constant()) ||
         (pair[0].is_zero() && !pair[1].is_zero() && pair[1].is_constant());
}

struct Division {
  Polynomial quotient;
  Polynomial remainder;
  std::size_t cancellations = 0;
};

/// Full division of a by b, cancelling every monomial divisible by lm(b).
Division divide_fully(const Polynomial& a, const Polynomial& b) {
  Division out;
  std::vector<Term> quotient, remainder;
  const Term lb = b.leading_term();
  Polynomial cur = a;
  while (!cur.is_zero()) {
    const Term lt = cur.leading_term();
    if (lb.mono.divides(lt.mono)) {
      Rational c = lt.coeff / lb.coeff;
      Monomial m = lt.mono / lb.mono;
      cur = cur.sub_scaled(c, m, b);
      quotient.push_back({std::move(c), std::move(m)});
      ++out.cancellations;
    } else {
      remainder.push_back(lt);
      cur = cur.sub_scaled(lt.coeff, Monomial(a.nvars()), Polynomial::term(1, lt.mono));
    }
  }
  out.quotient = Polynomial::from_terms(a.nvars(), std::move(quotient));
  out.remainder = Polynomial::from_terms(a.nvars(), std::move(remainder));
  return out;
}

class PairSearch {
 public:
  explicit PairSearch(std::size_t budget) : budget_(budget) {}

  bool run(const PolyRow2& start) {
    remember(start);
    return dfs(start);
  }

  ReductionTrace path;
  std::vector<std::size_t> cancellations;
  std::optional<ReductionTrace> dead_trace;
  std::vector<std::size_t> dead_cancellations;
  PolyRow2 dead_pair;
  PolyRow2 final_pair;
  std::size_t nodes = 0;
  bool exhausted = false;

 private:
  std::size_t budget_;
  std::unordered_map<std::size_t, std::vector<PolyRow2>> seen_;

  static PolyRow2 key_of(const PolyRow2& pair) {
    return {pair[0].is_zero() ? pair[0] : pair[0].monic(), pair[1].is_zero() ? pair[1] : pair[1].monic()};
  }

  /// False when the state was visited before.
  bool remember(const PolyRow2& pair) {
    PolyRow2 key = key_of(pair);
    auto& bucket = seen_[poly_hash(key[0]) * 31 + poly_hash(key[1])];
    for (const PolyRow2& other : bucket)
      if (other == key) return false;
    bucket.push_back(std::move(key));
    return true;
  }

  void push(ReductionStep step, const PolyRow2& after, std::size_t cancelled) {
    path.push_back({std::move(step), max_degree(after)});
    cancellations.push_back(cancelled);
  }

  void truncate(std::size_t size) {
    path.resize(size);
    cancellations.resize(size);
  }

  void note_dead(const PolyRow2& pair) {
    if (dead_trace) return;
    dead_trace = path;
    dead_cancellations = cancellations;
    dead_pair = pair;
  }

  /// (target, source) choices for the next division.
  static std::vector<std::pair<std::size_t, std::size_t>> options(const PolyRow2& pair) {
    if (pair[0].is_zero() || pair[1].is_zero()) return {};
    const Monomial &l0 = pair[0].leading_monomial(), &l1 = pair[1].leading_monomial();
    if (l0 == l1) return {{0, 1}, {1, 0}};
    if (l1.divides(l0)) return {{0, 1}};
    if (l0.divides(l1)) return {{1, 0}};
    return {};
  }

  bool advance(PolyRow2& pair, std::pair<std::size_t, std::size_t> choice) {
    if (++nodes > budget_) {
      exhausted = true;
      return false;
    }
    auto [t, s] = choice;
    Division d = divide_fully(pair[t], pair[s]);
    PolyRow2 next = pair;
    next[t] = std::move(d.remainder);
    if (!remember(next)) return false;
    pair = std::move(next);
    push(RegularStep{t, s, std::move(d.quotient), 1}, pair, d.cancellations);
    return true;
  }

  void normalize(PolyRow2& pair) {
    if (pair[0].is_zero()) {
      pair = {pair[1], pair[0]};
      push(SwapStep{}, pair, 0);
    }
    const Rational c = pair[0].constant_value();
    if (c != 1) {
      pair[0] = Polynomial::constant(2, 1);
      push(ScaleStep{1 / c, 1}, pair, 0);
    }
  }

  bool dfs(PolyRow2 pair) {
    const std::size_t mark = path.size();
    for (;;) {
      if (is_reached(pair)) {
        normalize(pair);
        final_pair = pair;
        return true;
      }
      if (exhausted) break;
      auto opts = options(pair);
      if (opts.size() == 1) {
        if (!advance(pair, opts[0])) break;
        continue;
      }
      for (const auto& opt : opts) {
        PolyRow2 next = pair;
        const std::size_t before = path.size();
        if (!advance(next, opt)) {
          if (exhausted) break;
          continue;
        }
        if (dfs(next)) return true;
        truncate(before);
      }
      break;
    }
    note_dead(pair);
    truncate(mark);
    return false;
  }
};

GEMatrix matrix_of(const ReductionTrace& trace) {
  GEMatrix m(2);
  for (const TraceEntry& e : trace) {
    if (const auto* r = std::get_if<RegularStep>(&e.step)) {
      if (r->alpha != 1) throw std::invalid_argument("scaled regular step in an elementary trace");
      m.append(ElementaryMatrix{r->source, r->target, -r->r});
    } else if (const auto* s = std::get_if<ScaleStep>(&e.step)) {
      m.append(DiagonalMatrix{s->d0, s->d1});
    } else if (std::holds_alternative<SwapStep>(e.step)) {
      m.append_swap();
    } else {
      throw std::invalid_argument("singular step has no GE2 matrix");
    }
  }
  return m;
}

}  // namespace

PolyRow2 replay(const PolyRow2& start, const ReductionTrace& trace) {
  PolyRow2 cur = start;
  for (const TraceEntry& e : trace) cur = apply_step(cur, e.step);
  return cur;
}

PolyRow2 gradient(const Polynomial& p) {
  if (p.nvars() != 2) throw std::invalid_argument("gradient pair needs two variables");
  return {partial_derivative(p, kX), partial_derivative(p, kY)};
}

int max_degree(const PolyRow2& pair) { return std::max(pair[0].degree(), pair[1].degree()); }

std::vector<int> round_degrees(int start_degree, const ReductionTrace& trace) {
  std::vector<int> rounds;
  int level = start_degree;
  for (const TraceEntry& e : trace) {
    if (e.max_degree < level) {
      rounds.push_back(e.max_degree);
      level = e.max_degree;
    }
  }
  return rounds;
}

GradientReduction elementary_reduce_pair(const PolyRow2& start, std::size_t budget) {
  PairSearch search(budget);
  GradientReduction out;
  out.reached = search.run(start);
  out.nodes = search.nodes;
  out.budget_exhausted = search.exhausted;
  if (out.reached) {
    out.trace = std::move(search.path);
    for (std::size_t c : search.cancellations) out.monomial_steps += c;
    out.final_pair = search.final_pair;
  } else {
    out.trace = std::move(*search.dead_trace);
    for (std::size_t c : search.dead_cancellations) out.monomial_steps += c;
    out.final_pair = search.dead_pair;
  }
  out.matrix = matrix_of(out.trace);
  if (!out.matrix.verify() || !(row_times(start, out.matrix.product()) == out.final_pair))
    throw std::logic_error("GE2 certificate does not reproduce the reduced pair");
  return out;
}

GradientReduction elementary_reduce_gradient(const Polynomial& p, std::size_t budget) {
  return elementary_reduce_pair(gradient(p), budget);
}

bool unimodular_gradient(const Polynomial& p) {
  if (p.is_constant()) return false;
  std::vector<Polynomial> partials;
  for (std::size_t i = 0; i < p.nvars(); ++i) partials.push_back(partial_derivative(p, i));
  return contains_one(partials);
}

std::string to_string(NotCoordinateReason r) {
  return r == NotCoordinateReason::gradient_not_unimodular ? "gradient not unimodular" : "reduction stuck";
}

// ---------------------------------------------------------------------------
// Completion by right reduction: p o s_1 o ... o s_k = x.

namespace {

std::optional<std::vector<ElementaryFactor>> right_reduction(const Polynomial& p) {
  std::vector<ElementaryFactor> sigma;
  Polynomial cur = p;
  auto apply = [&](ElementaryFactor f) {
    cur = substitute(cur, to_map(f));
    sigma.push_back(std::move(f));
  };
  while (cur.degree() > 1) {
    const Exponent n = static_cast<Exponent>(cur.degree());
    const Polynomial lf = cur.leading_form();
    const Rational c = lf.coefficient(mono(n, 0));
    if (sgn(c) != 0) {
      // Top form c (x + beta y)^n; (y - beta x, x) carries it to c y^n.
      const Rational beta = lf.coefficient(mono(n - 1, 1)) / (Rational(n) * c);
      if (!(lf == c * pow(var(kX) + beta * var(kY), n))) return std::nullopt;
      if (sgn(beta) == 0) {
        apply(Swap{});
      } else {
        Linear l;
        l.m = {{{-beta, 1}, {1, 0}}};
        apply(l);
      }
    } else if (lf.size() != 1 || !(lf.leading_monomial() == mono(0, n))) {
      return std::nullopt;
    }
    const int k = cur.degree_in(kX);
    if (k <= 0 || n % static_cast<Exponent>(k) != 0) return std::nullopt;
    const Exponent d = n / static_cast<Exponent>(k);
    const Rational ak = cur.coefficient(mono(static_cast<Exponent>(k), 0));
    if (sgn(ak) == 0) return std::nullopt;
    const Rational t = cur.coefficient(mono(static_cast<Exponent>(k) - 1, d)) / (Rational(k) * ak);
    if (sgn(t) == 0) return std::nullopt;
    apply(Shear{Polynomial::term(-t, mono(0, d))});
    if (cur.degree() >= static_cast<int>(n)) return std::nullopt;
  }
  if (cur.degree() < 1) return std::nullopt;
  const Rational a = cur.coefficient(mono(1, 0)), b = cur.coefficient(mono(0, 1)), g = cur.coefficient(Monomial(2));
  if (sgn(a) != 0) {
    if (sgn(g) != 0) apply(Shear{Polynomial::constant(2, -g / a)});
    if (a != 1 || sgn(b) != 0) {
      Linear l;
      l.m = {{{1 / a, -b / a}, {0, 1}}};
      apply(l);
    }
  } else {
    if (b == 1) {
      apply(Swap{});
    } else {
      Linear l;
      l.m = {{{0, 1}, {1 / b, 0}}};
      apply(l);
    }
    if (sgn(g) != 0) apply(Shear{Polynomial::constant(2, -g)});
  }
  if (!(cur == var(kX))) return std::nullopt;
  return sigma;
}

}  // namespace

Polynomial complete_to_basis(const Polynomial& p) {
  if (p.nvars() != 2) throw std::invalid_argument("completion needs two variables");
  auto sigma = right_reduction(p);
  if (!sigma) throw std::invalid_argument("not a coordinate polynomial");
  Decomposition s;
  for (auto& f : *sigma) s.steps.push_back({std::move(f), {}, {}});
  const PolyMap tau = invert_automorphism(s);
  if (!(tau[0] == p)) throw std::logic_error("right reduction does not invert to p");
  Polynomial q = tau[1];
  // Lower deg q below deg p by subtracting powers of p.
  while (q.degree() >= p.degree() && p.degree() >= 1) {
    const int a = q.degree(), b = p.degree();
    if (a % b != 0) break;
    const unsigned e = static_cast<unsigned>(a / b);
    const Polynomial power = e == 1 ? p.leading_form() : pow(p.leading_form(), e);
    const Rational mu = q.leading_coefficient() / power.leading_coefficient();
    if (!(q.leading_form() == mu * power)) break;
    q -= mu * pow(p, e);
  }
  if (!is_jacobian_unit(PolyMap({p, q})) || !decompose_automorphism(p, q).automorphism)
    throw std::logic_error("completion failed verification");
  return q;
}

namespace {

Decomposition reduction_sequence(const Polynomial& p, const Polynomial& q) {
  Decomposition seq = inverse(decompose_automorphism(p, q).decomposition);
  if (!(apply_factors(p, seq) == var(kX))) throw std::logic_error("reduction to x does not replay");
  return seq;
}

}  // namespace

Decomposition reduce_to_x1(const Polynomial& p) { return reduction_sequence(p, complete_to_basis(p)); }

bool verify_certificate(const Polynomial& p, const CoordCertificate& c) {
  if (!c.matrix.verify()) return false;
  const PolyRow2 target{Polynomial::constant(2, 1), Polynomial(2)};
  if (!(row_times(gradient(p), c.matrix.product()) == target)) return false;
  if (!is_jacobian_unit(PolyMap({p, c.q}))) return false;
  if (!decompose_automorphism(p, c.q).automorphism) return false;
  return apply_factors(p, c.auto_sequence) == var(kX);
}

CoordinateVerdict is_coordinate(const Polynomial& p) {
  if (p.nvars() != 2) throw std::invalid_argument("coordinate test needs two variables");
  CoordinateVerdict v;
  if (!unimodular_gradient(p)) {
    v.reason = NotCoordinateReason::gradient_not_unimodular;
    v.reduction.final_pair = gradient(p);
    return v;
  }
  v.reduction = elementary_reduce_gradient(p);
  if (!v.reduction.reached) {
    v.reason = NotCoordinateReason::reduction_stuck;
    return v;
  }
  CoordCertificate cert;
  cert.matrix = v.reduction.matrix;
  cert.q = complete_to_basis(p);
  cert.auto_sequence = reduction_sequence(p, cert.q);
  if (!verify_certificate(p, cert)) throw std::logic_error("coordinate certificate failed verification");
  v.coordinate = true;
  v.certificate = std::move(cert);
  return v;
}

// ---------------------------------------------------------------------------

ConjectureGVerdict conjecture_g_search(const Polynomial& p, std::size_t budget) {
  if (!unimodular_gradient(p)) throw std::invalid_argument("gradient is not unimodular");
  ConjectureGVerdict out;
  const PolyRow2 start = gradient(p);
  GradientReduction direct = elementary_reduce_pair(start);
  if (direct.reached) {
    out.found = true;
    out.witness = std::move(direct.trace);
    return out;
  }
  // States along the elementary path, latest first.
  std::vector<PolyRow2> states{start};
  for (const TraceEntry& e : direct.trace) states.push_back(apply_step(states.back(), e.step));
  for (std::size_t k = states.size(); k-- > 0;) {
    const PolyRow2& pair = states[k];
    if (pair[0].is_zero() || pair[1].is_zero()) continue;
    const std::size_t larger = deglex_compare(pair[0].leading_monomial(), pair[1].leading_monomial()) > 0 ? 0 : 1;
    for (std::size_t target : {larger, 1 - larger}) {
      if (out.attempts >= budget) return out;
      ++out.attempts;
      SPolynomial s = s_polynomial(pair[0], pair[1]);
      if (s.value.is_zero()) continue;
      PolyRow2 next = pair;
      next[target] = s.value;
      GradientReduction rest = elementary_reduce_pair(next);
      if (!rest.reached) continue;
      out.witness.assign(direct.trace.begin(), direct.trace.begin() + static_cast<std::ptrdiff_t>(k));
      out.witness.push_back({SingularStep{target, s.record}, max_degree(next)});
      out.witness.insert(out.witness.end(), rest.trace.begin(), rest.trace.end());
      out.singular_steps = 1;
      const PolyRow2 one{Polynomial::constant(2, 1), Polynomial(2)};
      if (!(replay(start, out.witness) == one)) throw std::logic_error("conjecture G witness does not replay");
      out.found = true;
      return out;
    }
  }
  return out;
}

}  // namespace combalg

#include "combalg/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>
#include <utility>

namespace combalg {

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::initializer_list<Exponent> exps) : exps_(exps.begin(), exps.end()) {
  for (Exponent e : exps_) degree_ += e;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i, Exponent power) {
  Monomial m(nvars);
  m.set(i, power);
  return m;
}

void Monomial::set(std::size_t i, Exponent e) {
  degree_ = degree_ - exps_[i] + e;
  exps_[i] = e;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

namespace {
void check_overflow(std::uint64_t e) {
  if (e > std::numeric_limits<Exponent>::max() / 2)
    throw std::overflow_error("monomial exponent overflow");
}
}  // namespace

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars());
  for (std::size_t i = 0; i < a.nvars(); ++i) r.exps_[i] = a.exps_[i] + b.exps_[i];
  check_overflow(std::uint64_t{a.degree_} + b.degree_);
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars());
  for (std::size_t i = 0; i < a.nvars(); ++i) r.exps_[i] = a.exps_[i] - b.exps_[i];
  r.degree_ = a.degree_ - b.degree_;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars());
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars());
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (Exponent e : exps_) h = (h ^ e) * 0x100000001b3ull + (h >> 29);
  return h;
}

// ---------------------------------------------------------------------------
// Polynomial

namespace {

bool term_desc(const Term& a, const Term& b) { return deglex_compare(a.mono, b.mono) > 0; }

/// Hash accumulator for sums of many terms.
class TermAccumulator {
 public:
  explicit TermAccumulator(std::size_t nvars) : nvars_(nvars) {}

  void add(const Rational& c, const Monomial& m) {
    auto [it, inserted] = acc_.try_emplace(m, c);
    if (!inserted) it->second += c;
  }
  void add_product(const Rational& a, const Rational& b, const Monomial& m) {
    auto [it, inserted] = acc_.try_emplace(m);
    if (inserted)
      mpq_mul(it->second.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    else {
      mpq_mul(tmp_.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
      it->second += tmp_;
    }
  }
  void add_scaled(const Rational& c, const Polynomial& p) {
    for (const Term& t : p.terms()) add_product(c, t.coeff, t.mono);
  }
  Polynomial take() {
    std::vector<Term> terms;
    terms.reserve(acc_.size());
    for (auto& [m, c] : acc_)
      if (!combalg::is_zero(c)) terms.push_back(Term{std::move(c), m});
    acc_.clear();
    return Polynomial::from_terms(nvars_, std::move(terms));
  }

 private:
  std::size_t nvars_;
  std::unordered_map<Monomial, Rational, MonomialHash> acc_;
  Rational tmp_;
};

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("polynomials live in different rings");
}

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  if (!combalg::is_zero(c)) p.terms_.push_back(Term{c, Monomial(nvars)});
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("variable index out of range");
  Polynomial p(nvars);
  p.terms_.push_back(Term{Rational(1), Monomial::variable(nvars, i)});
  return p;
}

Polynomial Polynomial::term(const Rational& c, const Monomial& m) {
  Polynomial p(m.nvars());
  if (!combalg::is_zero(c)) p.terms_.push_back(Term{c, m});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void Polynomial::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), term_desc);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (Term& t : terms_) {
    if (t.mono.nvars() != nvars_) throw std::invalid_argument("monomial arity mismatch");
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coeff += t.coeff;
    else {
      if (!out.empty() && combalg::is_zero(out.back().coeff)) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && combalg::is_zero(out.back().coeff)) out.pop_back();
  terms_ = std::move(out);
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  if (!terms_.front().mono.is_one()) throw std::domain_error("polynomial is not constant");
  return terms_.front().coeff;
}

int Polynomial::degree_in(std::size_t var) const {
  int d = -1;
  for (const Term& t : terms_) d = std::max(d, static_cast<int>(t.mono[var]));
  return d;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
  return terms_.front();
}

Polynomial Polynomial::leading_form() const {
  if (terms_.empty()) throw std::domain_error("leading form of the zero polynomial");
  return homogeneous_part(terms_.front().mono.degree());
}

Polynomial Polynomial::homogeneous_part(unsigned deg) const {
  Polynomial p(nvars_);
  for (const Term& t : terms_)
    if (t.mono.degree() == deg) p.terms_.push_back(t);
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& key) {
    return deglex_compare(t.mono, key) > 0;
  });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

namespace {

/// Merge of two descending term lists: a + sign * b.
std::vector<Term> merge_terms(std::span<const Term> a, std::span<const Term> b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto cmp = deglex_compare(a[i].mono, b[j].mono);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(Term{sign > 0 ? b[j].coeff : Rational(-b[j].coeff), b[j].mono});
      ++j;
    } else {
      Rational c = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
      if (!combalg::is_zero(c)) out.push_back(Term{std::move(c), a[i].mono});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(Term{sign > 0 ? b[j].coeff : Rational(-b[j].coeff), b[j].mono});
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(*this, other);
  terms_ = merge_terms(terms_, other.terms_, +1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(*this, other);
  terms_ = merge_terms(terms_, other.terms_, -1);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (combalg::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars());
  if (a.size() == 1) return b.mul_term(a.terms_[0].coeff, a.terms_[0].mono);
  if (b.size() == 1) return a.mul_term(b.terms_[0].coeff, b.terms_[0].mono);
  TermAccumulator acc(a.nvars());
  for (const Term& s : a.terms_)
    for (const Term& t : b.terms_) acc.add_product(s.coeff, t.coeff, s.mono * t.mono);
  return acc.take();
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Polynomial Polynomial::mul_term(const Rational& c, const Monomial& m) const {
  Polynomial r(nvars_);
  if (combalg::is_zero(c)) return r;
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) r.terms_.push_back(Term{Rational(t.coeff * c), t.mono * m});
  return r;
}

Polynomial Polynomial::sub_scaled(const Rational& c, const Monomial& m, const Polynomial& other) const {
  require_same_ring(*this, other);
  Polynomial r(nvars_);
  if (combalg::is_zero(c)) return *this;
  r.terms_.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  Rational tmp;
  while (i < terms_.size() && j < other.terms_.size()) {
    Monomial om = other.terms_[j].mono * m;
    auto cmp = deglex_compare(terms_[i].mono, om);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else {
      mpq_mul(tmp.get_mpq_t(), c.get_mpq_t(), other.terms_[j].coeff.get_mpq_t());
      if (cmp < 0) {
        r.terms_.push_back(Term{Rational(-tmp), std::move(om)});
      } else {
        Rational v = terms_[i].coeff - tmp;
        if (!combalg::is_zero(v)) r.terms_.push_back(Term{std::move(v), std::move(om)});
        ++i;
      }
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < other.terms_.size(); ++j)
    r.terms_.push_back(Term{Rational(-(c * other.terms_[j].coeff)), other.terms_[j].mono * m});
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / terms_.front().coeff;
  return *this * inv;
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  Integer den_lcm = 1, num_gcd = 0;
  for (const Term& t : terms_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sgn(terms_.front().coeff) < 0) scale = -scale;
  return *this * scale;
}

Polynomial Polynomial::extended(std::size_t nvars) const {
  if (nvars < nvars_) throw std::invalid_argument("cannot shrink the variable set");
  Polynomial r(nvars);
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) {
    Monomial m(nvars);
    for (std::size_t i = 0; i < nvars_; ++i) m.set(i, t.mono[i]);
    r.terms_.push_back(Term{t.coeff, std::move(m)});
  }
  // Appending zero exponents keeps deglex order intact.
  return r;
}

Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial result = Polynomial::constant(p.nvars(), 1);
  Polynomial base = p;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw std::out_of_range("derivative variable out of range");
  std::vector<Term> terms;
  for (const Term& t : p.terms()) {
    Exponent e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    terms.push_back(Term{Rational(t.coeff * e), std::move(m)});
  }
  return Polynomial::from_terms(p.nvars(), std::move(terms));
}

// ---------------------------------------------------------------------------
// PolyMap

PolyMap::PolyMap(std::vector<Polynomial> images) : images_(std::move(images)) {
  for (const Polynomial& p : images_)
    if (p.nvars() != images_.front().nvars()) throw std::invalid_argument("map images live in different rings");
}

PolyMap PolyMap::identity(std::size_t nvars) {
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < nvars; ++i) images.push_back(Polynomial::variable(nvars, i));
  return PolyMap(std::move(images));
}

int PolyMap::degree() const {
  int d = -1;
  for (const Polynomial& p : images_) d = std::max(d, p.degree());
  return d;
}

namespace {

/// Lazily filled table of powers of the images.
class PowerCache {
 public:
  explicit PowerCache(const PolyMap& phi) : phi_(phi), powers_(phi.arity()) {}

  const Polynomial& get(std::size_t var, Exponent e) {
    auto& table = powers_[var];
    if (table.empty()) table.push_back(Polynomial::constant(phi_.codomain_nvars(), 1));
    while (table.size() <= e) table.push_back(table.back() * phi_[var]);
    return table[e];
  }

 private:
  const PolyMap& phi_;
  std::vector<std::vector<Polynomial>> powers_;
};

/// Horner evaluation in variables [var, n-1) over the term subset; the last variable
/// is handled by a linear combination of cached powers.
Polynomial evaluate(std::vector<const Term*>& terms, std::size_t var, const PolyMap& phi, PowerCache& cache) {
  const std::size_t n = phi.arity();
  const std::size_t out_vars = phi.codomain_nvars();
  if (terms.empty()) return Polynomial(out_vars);
  if (var + 1 == n) {
    TermAccumulator acc(out_vars);
    for (const Term* t : terms) acc.add_scaled(t->coeff, cache.get(var, t->mono[var]));
    return acc.take();
  }
  std::map<Exponent, std::vector<const Term*>, std::greater<>> groups;
  for (const Term* t : terms) groups[t->mono[var]].push_back(t);
  Polynomial acc(out_vars);
  Exponent prev = groups.begin()->first;
  bool first = true;
  for (auto& [e, group] : groups) {
    if (!first) acc = acc * cache.get(var, prev - e);
    acc += evaluate(group, var + 1, phi, cache);
    prev = e;
    first = false;
  }
  if (prev > 0) acc = acc * cache.get(var, prev);
  return acc;
}

}  // namespace

Polynomial substitute(const Polynomial& p, const PolyMap& phi) {
  if (p.nvars() != phi.arity()) throw std::invalid_argument("substitution arity mismatch");
  if (phi.arity() == 0) return p;
  std::vector<const Term*> terms;
  terms.reserve(p.size());
  for (const Term& t : p.terms()) terms.push_back(&t);
  PowerCache cache(phi);
  return evaluate(terms, 0, phi, cache);
}

PolyMap compose(const PolyMap& phi, const PolyMap& psi) {
  std::vector<Polynomial> images;
  images.reserve(phi.arity());
  for (const Polynomial& p : phi.images()) images.push_back(substitute(p, psi));
  return PolyMap(std::move(images));
}

namespace {
void require_plane_map(const PolyMap& phi) {
  if (phi.arity() != 2 || phi.codomain_nvars() != 2)
    throw std::invalid_argument("Jacobian determinant requires a map of the plane (arity 2)");
}
}  // namespace

PolyMatrix2 jacobian(const PolyMap& phi) {
  require_plane_map(phi);
  PolyMatrix2 j;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) j[r][c] = partial_derivative(phi[r], c);
  return j;
}

Polynomial jacobian_det(const PolyMap& phi) {
  auto j = jacobian(phi);
  return j[0][0] * j[1][1] - j[0][1] * j[1][0];
}

bool is_jacobian_unit(const PolyMap& phi) {
  Polynomial det = jacobian_det(phi);
  return !det.is_zero() && det.is_constant();
}

DivisionResult divide(const Polynomial& p, std::span<const Polynomial> divisors) {
  for (const Polynomial& f : divisors) {
    if (f.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    require_same_ring(p, f);
  }
  DivisionResult result;
  std::vector<std::vector<Term>> quotient_terms(divisors.size());
  std::vector<Term> remainder_terms;
  Polynomial rest = p;
  while (!rest.is_zero()) {
    const Term& lt = rest.leading_term();
    bool reduced = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const Term& dlt = divisors[i].leading_term();
      if (!dlt.mono.divides(lt.mono)) continue;
      Rational c = lt.coeff / dlt.coeff;
      Monomial m = lt.mono / dlt.mono;
      quotient_terms[i].push_back(Term{c, m});
      rest = rest.sub_scaled(c, m, divisors[i]);
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder_terms.push_back(lt);
      rest = rest.sub_scaled(1, Monomial(p.nvars()), Polynomial::term(lt.coeff, lt.mono));
    }
  }
  for (auto& q : quotient_terms) result.quotients.push_back(Polynomial::from_terms(p.nvars(), std::move(q)));
  result.remainder = Polynomial::from_terms(p.nvars(), std::move(remainder_terms));
  return result;
}

}  // namespace combalg

#pragma once

#include <boost/container/small_vector.hpp>

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "combalg/rational.hpp"

namespace combalg {

using Exponent = std::uint32_t;

/// Exponent vector x1^e1 ... xn^en with cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  Monomial(std::initializer_list<Exponent> exps);

  static Monomial variable(std::size_t nvars, std::size_t i, Exponent power = 1);

  std::size_t nvars() const { return exps_.size(); }
  Exponent degree() const { return degree_; }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, Exponent e);
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// a / b; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

  std::size_t hash() const;

 private:
  boost::container::small_vector<Exponent, 4> exps_;
  Exponent degree_ = 0;
};

/// Deglex: total degree first, then lexicographic with x1 > x2 > ... > xn.
inline std::strong_ordering deglex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    if (a[i] != b[i]) {
#ifdef COMBALG_MUTATE_DEGLEX
      return b[i] <=> a[i];
#else
      return a[i] <=> b[i];
#endif
    }
  }
  return std::strong_ordering::equal;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
  Rational coeff;
  Monomial mono;
};

class PolyMap;

/// Sparse polynomial over the rationals in a fixed number of variables.
/// Terms are stored in strictly descending deglex order with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial term(const Rational& c, const Monomial& m);
  /// Builds from arbitrary (unsorted, possibly repeated or zero) terms.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || terms_.front().mono.is_one(); }
  /// Constant term value when is_constant().
  Rational constant_value() const;
  /// -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.degree()); }
  int degree_in(std::size_t var) const;

  /// Throws std::domain_error on the zero polynomial.
  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().mono; }
  const Rational& leading_coefficient() const { return leading_term().coeff; }
  /// Top-degree homogeneous component. Throws on zero.
  Polynomial leading_form() const;
  Polynomial homogeneous_part(unsigned deg) const;
  Rational coefficient(const Monomial& m) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// this - c * m * other, computed by a single merge.
  Polynomial sub_scaled(const Rational& c, const Monomial& m, const Polynomial& other) const;
  Polynomial mul_term(const Rational& c, const Monomial& m) const;

  /// Divides by the leading coefficient.
  Polynomial monic() const;
  /// Integer-coefficient polynomial with positive leading coefficient and unit content.
  Polynomial primitive() const;

  /// Re-embeds into a ring with more (or the same number of) variables, keeping indices.
  Polynomial extended(std::size_t nvars) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;

  void canonicalize();
};

Polynomial pow(const Polynomial& p, unsigned k);
Polynomial partial_derivative(const Polynomial& p, std::size_t var);

/// Endomorphism of K[x1..xn] given by the images of the variables.
/// All images live in one ring (the codomain); the domain arity is images.size().
class PolyMap {
 public:
  PolyMap() = default;
  explicit PolyMap(std::vector<Polynomial> images);

  static PolyMap identity(std::size_t nvars);

  std::size_t arity() const { return images_.size(); }
  std::size_t codomain_nvars() const { return images_.empty() ? 0 : images_.front().nvars(); }
  const Polynomial& operator[](std::size_t i) const { return images_[i]; }
  std::span<const Polynomial> images() const { return images_; }
  /// Maximum degree of the images.
  int degree() const;

  friend bool operator==(const PolyMap& a, const PolyMap& b) { return a.images_ == b.images_; }

 private:
  std::vector<Polynomial> images_;
};

/// p(phi_1, ..., phi_n).
Polynomial substitute(const Polynomial& p, const PolyMap& phi);

/// Endomorphism "apply phi, then psi": substitute(p, compose(phi, psi)) == substitute(substitute(p, phi), psi).
/// Componentwise this is phi_i(psi_1, ..., psi_n), the map composition phi o psi.
PolyMap compose(const PolyMap& phi, const PolyMap& psi);

using PolyMatrix2 = std::array<std::array<Polynomial, 2>, 2>;

/// J[i][j] = d phi_i / d x_j. Requires arity 2 on two variables.
PolyMatrix2 jacobian(const PolyMap& phi);
Polynomial jacobian_det(const PolyMap& phi);
/// Determinant is a nonzero constant.
bool is_jacobian_unit(const PolyMap& phi);

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division; at each step the first divisor whose leading monomial divides
/// the current leading monomial is used.
DivisionResult divide(const Polynomial& p, std::span<const Polynomial> divisors);

}  // namespace combalg

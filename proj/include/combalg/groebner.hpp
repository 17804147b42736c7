#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "combalg/polynomial.hpp"

namespace combalg {

struct SPolyRecord {
  Monomial lcm;
  Term lead_p;
  Term lead_q;
};

struct SPolynomial {
  Polynomial value;
  SPolyRecord record;
};

/// L/lt(p) * p - L/lt(q) * q with L = lcm(lm(p), lm(q)). Throws std::domain_error on zero input.
SPolynomial s_polynomial(const Polynomial& p, const Polynomial& q);

enum class ReductionKind { regular, singular };

/// Regular iff one leading monomial divides the other.
ReductionKind classify_reduction(const Polynomial& p, const Polynomial& q);

/// Reduced Groebner basis under deglex: monic, inter-reduced, sorted by increasing
/// leading monomial. Zero generators are ignored; the zero ideal gives an empty basis.
std::vector<Polynomial> buchberger(std::span<const Polynomial> generators);

bool contains_one(std::span<const Polynomial> generators);

/// Complete reduction: no monomial of the result is divisible by a leading monomial of the basis.
Polynomial reduce_mod_basis(const Polynomial& p, std::span<const Polynomial> basis);

// ---------------------------------------------------------------------------
// 2x2 matrices in GE_2 acting on row vectors from the right.

/// Identity plus `entry` at (row, col), row != col.
struct ElementaryMatrix {
  std::size_t row, col;
  Polynomial entry;
};
struct DiagonalMatrix {
  Rational d0, d1;
};
using GEFactor = std::variant<ElementaryMatrix, DiagonalMatrix>;

PolyMatrix2 to_matrix(const GEFactor& f, std::size_t nvars);

class GEMatrix {
 public:
  explicit GEMatrix(std::size_t nvars);

  /// M <- M * F.
  void append(GEFactor f);
  /// Exchange of the two columns as E12(1) E21(-1) E12(1) diag(-1, 1).
  void append_swap();

  std::span<const GEFactor> factors() const { return factors_; }
  const PolyMatrix2& product() const { return product_; }

  /// Rebuilds the product from the factor list and compares with the cache.
  bool verify() const;
  /// Determinant of the product (a nonzero scalar by construction).
  Polynomial determinant() const;

 private:
  std::size_t nvars_;
  std::vector<GEFactor> factors_;
  PolyMatrix2 product_;
};

using PolyRow2 = std::array<Polynomial, 2>;

/// (r0, r1) * M.
PolyRow2 row_times(const PolyRow2& row, const PolyMatrix2& m);
PolyMatrix2 mat_mul(const PolyMatrix2& a, const PolyMatrix2& b);

// ---------------------------------------------------------------------------
// Steps on a pair (f0, f1).

/// pair[target] <- alpha * (pair[target] - r * pair[source]).
struct RegularStep {
  std::size_t target, source;
  Polynomial r;
  Rational alpha{1};
};
/// pair[target] <- S(pair[0], pair[1]).
struct SingularStep {
  std::size_t target;
  SPolyRecord record;
};
/// pair <- (d0 * pair[0], d1 * pair[1]).
struct ScaleStep {
  Rational d0, d1;
};
/// pair <- (pair[1], pair[0]).
struct SwapStep {};

using ReductionStep = std::variant<RegularStep, SingularStep, ScaleStep, SwapStep>;

/// Applies one step; throws std::invalid_argument if a regular step's indices coincide
/// or a singular step is applied to a pair with a zero entry.
PolyRow2 apply_step(const PolyRow2& pair, const ReductionStep& step);

}  // namespace combalg

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "combalg/polynomial.hpp"

namespace combalg {

/// (x, y) -> (m00 x + m01 y, m10 x + m11 y); nonzero determinant.
struct Linear {
  std::array<std::array<Rational, 2>, 2> m;
  friend bool operator==(const Linear&, const Linear&) = default;
};
/// (x, y) -> (x + f(y), y); f depends on y only and may have a constant term.
struct Shear {
  Polynomial f;
  friend bool operator==(const Shear&, const Shear&) = default;
};
/// (x, y) -> (y, x).
struct Swap {
  friend bool operator==(const Swap&, const Swap&) = default;
};
using ElementaryFactor = std::variant<Linear, Shear, Swap>;

/// Throws std::invalid_argument for a singular Linear or a Shear not in K[y].
void validate(const ElementaryFactor& f);
PolyMap to_map(const ElementaryFactor& f);
ElementaryFactor inverse(const ElementaryFactor& f);
std::string format(const ElementaryFactor& f);

struct DecompositionStep {
  ElementaryFactor factor;
  /// Set on the steps that removed a leading form: g1 - mu * g2^d.
  std::optional<Rational> mu;
  std::optional<unsigned> d;
};

/// The map equals factor_1 o factor_2 o ... o factor_k (compose order).
struct Decomposition {
  std::vector<DecompositionStep> steps;
};

PolyMap compose_factors(const Decomposition& d);

/// substitute(p, compose_factors(d)) computed one factor at a time, which keeps
/// intermediate degrees low when the factors reduce p.
Polynomial apply_factors(const Polynomial& p, const Decomposition& d);

enum class RejectReason { component_constant, degree_ratio_not_integer, leading_form_mismatch, linear_part_singular };
std::string to_string(RejectReason r);

struct TameVerdict {
  bool automorphism = false;
  Decomposition decomposition;
  std::optional<RejectReason> reason;
  /// The pair at which the reduction stopped (for rejections).
  std::array<Polynomial, 2> residual;
};

/// Degree-reducing factorization of (g1, g2); the result is verified by recomposition.
/// Throws std::invalid_argument unless both components live in two variables.
TameVerdict decompose_automorphism(const Polynomial& g1, const Polynomial& g2);

/// Two-sided inverse of the composed map.
PolyMap invert_automorphism(const Decomposition& d);
/// Factor list of the inverse: inverses in reverse order.
Decomposition inverse(const Decomposition& d);

// ---------------------------------------------------------------------------
// Univariate pairs.

struct UnivariateStep {
  /// Index of the element replaced: element[target] -= mu * element[1 - target]^power.
  std::size_t target;
  Rational mu;
  unsigned power;
};

struct UnivariateVerdict {
  bool generating = false;
  std::vector<UnivariateStep> trace;
  /// Degrees (n, m) of the final pair; when not generating and both are nonconstant,
  /// neither divides the other.
  std::array<int, 2> final_degrees{};
  std::array<Polynomial, 2> final_pair;
};

/// Decides K[u, v] = K[t] for polynomials in one variable.
UnivariateVerdict is_univariate_generating_pair(const Polynomial& u, const Polynomial& v);

// ---------------------------------------------------------------------------
// Random tame maps.

struct TameBounds {
  unsigned max_factor_degree = 3;
  int max_coefficient = 3;
  unsigned degree_cap = 64;
};

struct RandomTame {
  PolyMap map;
  Decomposition decomposition;
};

/// Composition of k random Linear/Shear factors; factors that would push the degree
/// beyond the cap are redrawn with smaller degree.
RandomTame random_tame_automorphism(std::uint64_t seed, unsigned k, const TameBounds& bounds = {});

}  // namespace combalg

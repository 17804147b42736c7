#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "combalg/polynomial.hpp"
#include "combalg/tame.hpp"

namespace combalg {

enum class ImageKind { whole_algebra, constants, generated_by, generator_not_located };
std::string to_string(ImageKind k);

struct Retraction {
  PolyMap phi;
  /// phi(phi(x)) and phi(phi(y)), equal to phi(x) and phi(y).
  std::array<Polynomial, 2> idempotence;
  ImageKind image = ImageKind::generator_not_located;
  /// Set when image == generated_by: the image is K[generator].
  std::optional<Polynomial> generator;
};

struct RetractionVerdict {
  bool retraction = false;
  std::optional<Retraction> certificate;
};

/// Idempotence check plus image generator extraction. Requires arity 2 on two variables.
RetractionVerdict verify_retraction(const PolyMap& phi);

/// (x + y q, 0); fixes x + y q.
Retraction normal_form_retraction(const Polynomial& q);

struct RetractWitness {
  bool found = false;
  /// p(a, b) = x when found.
  Polynomial a, b;
  /// Degree bound searched when not found.
  unsigned degree_bound = 0;
  std::string route;
  std::size_t groebner_calls = 0;
};

constexpr std::size_t kDefaultWitnessBudget = 200;

/// Seeks a map (a, b) with deg <= D and p(a, b) = x. Throws std::invalid_argument on constant p.
RetractWitness retract_witness_search(const Polynomial& p, unsigned max_degree,
                                      std::size_t budget = kDefaultWitnessBudget);

/// Basis of {p : phi(p) = p, deg p <= D}, with distinct leading monomials, monic,
/// sorted by increasing leading monomial; each element verified by substitution.
std::vector<Polynomial> find_fixed_polynomials(const PolyMap& phi, unsigned max_degree);

struct StableImageReport {
  bool automorphism = false;
  /// Maximum image degree of phi^k for k = 1..k_max.
  std::vector<int> iterate_degrees;
  /// Dimension of the fixed space in degree <= d for d = 0..D.
  std::vector<std::size_t> fixed_dimensions;
  bool constant_images = false;
};

StableImageReport stable_image_diagnostics(const PolyMap& phi, unsigned k_max, unsigned fixed_degree);

struct JacobianHarnessReport {
  bool jacobian_unit = false;
  Polynomial jacobian_det;
  unsigned fixed_degree = 0;
  std::vector<Polynomial> fixed;
  bool nonconstant_fixed = false;
  bool automorphism = false;
  std::optional<Decomposition> decomposition;
  /// Unit Jacobian, a nonconstant fixed polynomial and no decomposition.
  bool inconsistency = false;
  bool hypothesis_met = false;
};

/// Default fixed-polynomial degree for a map: 2 deg(phi), at most kMaxDefaultFixedDegree.
constexpr unsigned kMaxDefaultFixedDegree = 6;
unsigned default_fixed_degree(const PolyMap& phi);

JacobianHarnessReport jc_harness(const PolyMap& phi, std::optional<unsigned> fixed_degree = {});

}  // namespace combalg

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "combalg/groebner.hpp"
#include "combalg/polynomial.hpp"
#include "combalg/tame.hpp"

namespace combalg {

struct TraceEntry {
  ReductionStep step;
  /// Maximum monomial degree of the pair after the step (-1 for the zero pair).
  int max_degree;
};
using ReductionTrace = std::vector<TraceEntry>;

PolyRow2 replay(const PolyRow2& start, const ReductionTrace& trace);
PolyRow2 gradient(const Polynomial& p);
int max_degree(const PolyRow2& pair);

/// Maximum pair degree at the end of each division round: a round closes when the
/// pair's maximum degree first drops below its value at the start of the round.
std::vector<int> round_degrees(int start_degree, const ReductionTrace& trace);

struct GradientReduction {
  bool reached = false;
  /// start * matrix equals final_pair; (1, 0) when reached.
  GEMatrix matrix{2};
  ReductionTrace trace;
  PolyRow2 final_pair;
  /// Single-monomial cancellations performed along the returned trace.
  std::size_t monomial_steps = 0;
  /// Division attempts including abandoned branches.
  std::size_t nodes = 0;
  bool budget_exhausted = false;
};

constexpr std::size_t kDefaultReductionBudget = 20000;

/// Elementary reduction of an arbitrary pair in two variables: repeated full division of the
/// component with the larger leading monomial by the other, branching when the leading
/// monomials coincide. The pair's maximum degree never increases.
GradientReduction elementary_reduce_pair(const PolyRow2& start, std::size_t budget = kDefaultReductionBudget);
GradientReduction elementary_reduce_gradient(const Polynomial& p, std::size_t budget = kDefaultReductionBudget);

/// Partial derivatives generate the unit ideal; false for constants.
bool unimodular_gradient(const Polynomial& p);

struct CoordCertificate {
  GEMatrix matrix{2};
  Polynomial q;
  /// Applying these factors (compose order) to p yields x.
  Decomposition auto_sequence;
};

enum class NotCoordinateReason { gradient_not_unimodular, reduction_stuck };
std::string to_string(NotCoordinateReason r);

struct CoordinateVerdict {
  bool coordinate = false;
  std::optional<CoordCertificate> certificate;
  std::optional<NotCoordinateReason> reason;
  GradientReduction reduction;
};

/// Throws std::invalid_argument unless p lives in two variables.
CoordinateVerdict is_coordinate(const Polynomial& p);

/// Re-checks (d1 p, d2 p) M = (1, 0), the unit Jacobian of (p, q), the decomposition of
/// (p, q) and the replay of the automorphism sequence.
bool verify_certificate(const Polynomial& p, const CoordCertificate& c);

/// q with (p, q) an automorphism and deg q <= deg p. Throws std::invalid_argument when p
/// is not a coordinate.
Polynomial complete_to_basis(const Polynomial& p);

/// Elementary factors whose composition sends p to x (p o sigma = x).
Decomposition reduce_to_x1(const Polynomial& p);

struct ConjectureGVerdict {
  bool found = false;
  ReductionTrace witness;
  std::size_t singular_steps = 0;
  std::size_t attempts = 0;
};

/// Looks for a reduction of the gradient to (1, 0) using at most one singular step.
/// `budget` bounds the number of singular replacements tried. Throws
/// std::invalid_argument when the gradient is not unimodular.
ConjectureGVerdict conjecture_g_search(const Polynomial& p, std::size_t budget);

}  // namespace combalg

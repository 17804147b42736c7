#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace combalg::fg {

/// Signed generator index: +i is x_i, -i is x_i^-1 (1-based).
using Letter = int;

/// Freely reduced word in the free group of the given rank.
class FreeWord {
 public:
  FreeWord() = default;
  /// Freely reduces `letters`; throws std::invalid_argument on an index outside 1..rank.
  FreeWord(std::vector<Letter> letters, int rank);

  static FreeWord generator(int i, int rank) { return FreeWord({i}, rank); }

  int rank() const { return rank_; }
  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  FreeWord inverse() const;
  friend FreeWord operator*(const FreeWord& a, const FreeWord& b);
  friend bool operator==(const FreeWord& a, const FreeWord& b) = default;
  friend auto operator<=>(const FreeWord& a, const FreeWord& b) = default;

 private:
  std::vector<Letter> letters_;
  int rank_ = 0;
};

/// Letters of a raw sequence, freely reduced.
FreeWord free_reduce(std::vector<Letter> raw, int rank);

/// Order on letters: by index magnitude, then x_i before x_i^-1.
bool letter_less(Letter a, Letter b);

/// Cyclically reduced word stored in its minimal rotation.
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(const FreeWord& w);

  int rank() const { return word_.rank(); }
  std::span<const Letter> letters() const { return word_.letters(); }
  std::size_t length() const { return word_.length(); }
  const FreeWord& word() const { return word_; }

  friend bool operator==(const CyclicWord& a, const CyclicWord& b) = default;
  friend auto operator<=>(const CyclicWord& a, const CyclicWord& b) = default;

 private:
  FreeWord word_;
};

CyclicWord cyclic_reduce(const FreeWord& w);

using GeneratorTuple = std::vector<FreeWord>;

std::size_t total_length(const GeneratorTuple& tuple);

// ---------------------------------------------------------------------------
// Nielsen transformations (indices 0-based).

enum class Side { right, left };

/// y_i -> y_i y_j (right) or y_j y_i (left).
struct N1 {
  std::size_t i, j;
  Side side;
  friend bool operator==(const N1&, const N1&) = default;
};
/// y_i -> y_i^-1.
struct N2 {
  std::size_t i;
  friend bool operator==(const N2&, const N2&) = default;
};
/// Swap y_i and y_j.
struct N3 {
  std::size_t i, j;
  friend bool operator==(const N3&, const N3&) = default;
};
using NielsenMove = std::variant<N1, N2, N3>;

/// Throws std::invalid_argument on out-of-range or coinciding indices.
GeneratorTuple apply_nielsen(const GeneratorTuple& tuple, const NielsenMove& move);

// ---------------------------------------------------------------------------
// Whitehead automorphisms (generators 1-based).

/// x_i -> x_{perm[i]}^{+-1}; perm is a permutation of 1..n.
struct WhiteheadPermutation {
  std::vector<int> perm;
  std::vector<bool> invert;
  friend bool operator==(const WhiteheadPermutation&, const WhiteheadPermutation&) = default;
};

/// For multiplier a = x_j^e, every generator other than x_j is sent to one of
/// x_i, x_i a, a^-1 x_i, a^-1 x_i a.
enum class WhiteheadAction { fix, right_multiply, left_multiply_inverse, conjugate };

struct WhiteheadMultiplier {
  Letter multiplier;
  /// Indexed by generator - 1; the entry for |multiplier| is always `fix`.
  std::vector<WhiteheadAction> actions;
  friend bool operator==(const WhiteheadMultiplier&, const WhiteheadMultiplier&) = default;
};

using WhiteheadMove = std::variant<WhiteheadPermutation, WhiteheadMultiplier>;

/// All n!*2^n signed permutations followed by all 2n*4^(n-1) multiplier moves.
std::vector<WhiteheadMove> enumerate_whitehead_moves(int rank);

/// Image of generator x_i (1-based) under the move.
FreeWord whitehead_image(const WhiteheadMove& move, int generator, int rank);
FreeWord apply_whitehead(const WhiteheadMove& move, const FreeWord& w);
CyclicWord apply_whitehead(const WhiteheadMove& move, const CyclicWord& w);
WhiteheadMove inverse(const WhiteheadMove& move);

// ---------------------------------------------------------------------------
// Certificates and verdicts.

struct TraceStep {
  std::variant<NielsenMove, WhiteheadMove> move;
  /// Total length (tuples) or cyclic length (words) after the step.
  std::size_t complexity;
};
using MoveTrace = std::vector<TraceStep>;

struct NielsenResult {
  GeneratorTuple reduced;
  MoveTrace trace;
};

/// Applies the moves in order and then removes empty words.
GeneratorTuple replay(const GeneratorTuple& start, const MoveTrace& trace);

/// Length-descending Nielsen reduction; see README for the move set.
NielsenResult nielsen_reduce(const GeneratorTuple& tuple);

struct Membership {
  bool member = false;
  /// Word in the tuple's letters (rank = tuple size) evaluating to the input when member.
  std::optional<FreeWord> expression;
};

/// Folded core graph membership test.
Membership subgroup_membership(const GeneratorTuple& tuple, const FreeWord& w);

/// Substitutes the tuple into a word written in the tuple's letters.
FreeWord evaluate(const FreeWord& expression, const GeneratorTuple& tuple);

bool same_subgroup(const GeneratorTuple& a, const GeneratorTuple& b);

struct AutomorphismVerdict {
  bool automorphism = false;
  NielsenResult reduction;
};

/// Throws std::invalid_argument unless images.size() equals the rank.
AutomorphismVerdict is_free_automorphism(const GeneratorTuple& images);

struct MinimizeResult {
  CyclicWord minimal;
  MoveTrace trace;
};

/// Steepest descent on cyclic length; first improving move in enumeration order wins ties.
MinimizeResult whitehead_minimize(const CyclicWord& w);

/// Replays Whitehead moves on a cyclic word.
CyclicWord replay(const CyclicWord& start, const MoveTrace& trace);

struct PrimitivityVerdict {
  bool primitive = false;
  MinimizeResult minimization;
};

/// Throws std::invalid_argument on the empty word.
PrimitivityVerdict is_primitive(const FreeWord& w);

enum class ConjugacyOutcome { equivalent, not_equivalent, budget_exceeded };

struct ConjugacyVerdict {
  ConjugacyOutcome outcome = ConjugacyOutcome::not_equivalent;
  /// Moves carrying cyclic_reduce(u) to cyclic_reduce(v) when equivalent.
  MoveTrace trace;
  std::size_t states_visited = 0;
};

/// Decides whether some automorphism carries the conjugacy class of u to that of v.
/// `budget` bounds the number of equal-length states explored.
ConjugacyVerdict automorphic_conjugacy(const FreeWord& u, const FreeWord& v, std::size_t budget);

// ---------------------------------------------------------------------------
// Text.

/// Generators x1..x9 or letters a..z; inverse by ^-1 or upper case; ^k powers;
/// whitespace or '*' separators. "1" or "" is the identity.
FreeWord parse_word(std::string_view text, int rank);
GeneratorTuple parse_tuple(std::string_view text, int rank);
/// Highest generator index mentioned (at least 2).
int infer_rank(std::string_view text);

std::string format(const FreeWord& w);
std::string format(const CyclicWord& w);
std::string format(const GeneratorTuple& tuple);
std::string format(const NielsenMove& move);
std::string format(const WhiteheadMove& move);

}  // namespace combalg::fg

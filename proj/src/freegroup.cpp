#include "combalg/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace combalg::fg {

// ---------------------------------------------------------------------------
// Words

FreeWord::FreeWord(std::vector<Letter> letters, int rank) : rank_(rank) {
  if (rank < 0) throw std::invalid_argument("negative rank");
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (l == 0 || std::abs(l) > rank)
      throw std::invalid_argument("generator index " + std::to_string(l) + " out of range for rank " +
                                  std::to_string(rank));
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

FreeWord FreeWord::inverse() const {
  FreeWord r;
  r.rank_ = rank_;
  r.letters_.assign(letters_.rbegin(), letters_.rend());
  for (Letter& l : r.letters_) l = -l;
  return r;
}

FreeWord operator*(const FreeWord& a, const FreeWord& b) {
  if (a.rank_ != b.rank_) throw std::invalid_argument("words of different rank");
  FreeWord r = a;
  for (Letter l : b.letters_) {
    if (!r.letters_.empty() && r.letters_.back() == -l)
      r.letters_.pop_back();
    else
      r.letters_.push_back(l);
  }
  return r;
}

FreeWord free_reduce(std::vector<Letter> raw, int rank) { return FreeWord(std::move(raw), rank); }

bool letter_less(Letter a, Letter b) {
  if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
  return a > b;
}

namespace {

bool rotation_less(std::span<const Letter> w, std::size_t r1, std::size_t r2) {
  const std::size_t n = w.size();
  for (std::size_t k = 0; k < n; ++k) {
    Letter a = w[(r1 + k) % n], b = w[(r2 + k) % n];
    if (a != b) return letter_less(a, b);
  }
  return false;
}

}  // namespace

CyclicWord::CyclicWord(const FreeWord& w) {
  auto letters = w.letters();
  std::size_t lo = 0, hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == -letters[hi - 1]) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(letters.begin() + static_cast<std::ptrdiff_t>(lo),
                           letters.begin() + static_cast<std::ptrdiff_t>(hi));
  std::size_t best = 0;
  for (std::size_t r = 1; r < core.size(); ++r)
    if (rotation_less(core, r, best)) best = r;
  std::rotate(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(best), core.end());
  word_ = FreeWord(std::move(core), w.rank());
}

CyclicWord cyclic_reduce(const FreeWord& w) { return CyclicWord(w); }

std::size_t total_length(const GeneratorTuple& tuple) {
  std::size_t n = 0;
  for (const FreeWord& w : tuple) n += w.length();
  return n;
}

// ---------------------------------------------------------------------------
// Nielsen

namespace {

void check_index(std::size_t i, std::size_t size) {
  if (i >= size) throw std::invalid_argument("Nielsen move index out of range");
}

}  // namespace

GeneratorTuple apply_nielsen(const GeneratorTuple& tuple, const NielsenMove& move) {
  GeneratorTuple out = tuple;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, N1>) {
          check_index(m.i, tuple.size());
          check_index(m.j, tuple.size());
          if (m.i == m.j) throw std::invalid_argument("N1 requires i != j");
          out[m.i] = m.side == Side::right ? tuple[m.i] * tuple[m.j] : tuple[m.j] * tuple[m.i];
        } else if constexpr (std::is_same_v<M, N2>) {
          check_index(m.i, tuple.size());
          out[m.i] = tuple[m.i].inverse();
        } else {
          check_index(m.i, tuple.size());
          check_index(m.j, tuple.size());
          if (m.i == m.j) throw std::invalid_argument("N3 requires i != j");
          std::swap(out[m.i], out[m.j]);
        }
      },
      move);
  return out;
}

GeneratorTuple replay(const GeneratorTuple& start, const MoveTrace& trace) {
  GeneratorTuple cur = start;
  for (const TraceStep& step : trace) {
    const auto* move = std::get_if<NielsenMove>(&step.move);
    if (!move) throw std::invalid_argument("Whitehead move in a Nielsen trace");
    cur = apply_nielsen(cur, *move);
  }
  std::erase_if(cur, [](const FreeWord& w) { return w.empty(); });
  return cur;
}

namespace {

/// y_i -> y_i y_j^e (right) or y_j^e y_i (left): raw N1 for e = +1, N2 o N1 o N2 for e = -1.
struct ProductMove {
  std::size_t i, j;
  Side side;
  bool inverse;
};

FreeWord product_image(const GeneratorTuple& y, const ProductMove& m) {
  FreeWord factor = m.inverse ? y[m.j].inverse() : y[m.j];
  return m.side == Side::right ? y[m.i] * factor : factor * y[m.i];
}

/// Candidate moves in (i, j, variant) order.
std::vector<ProductMove> product_moves(std::size_t m) {
  std::vector<ProductMove> moves;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      moves.push_back({i, j, Side::right, false});
      moves.push_back({i, j, Side::right, true});
      moves.push_back({i, j, Side::left, false});
      moves.push_back({i, j, Side::left, true});
    }
  return moves;
}

void append_product_move(GeneratorTuple& y, MoveTrace& trace, const ProductMove& m) {
  auto push = [&](const NielsenMove& move) {
    y = apply_nielsen(y, move);
    trace.push_back(TraceStep{move, total_length(y)});
  };
  if (m.inverse) push(N2{m.j});
  push(N1{m.i, m.j, m.side});
  if (m.inverse) push(N2{m.j});
}

/// Best strictly length-decreasing product move (largest decrease, earliest on ties).
std::optional<ProductMove> best_decrease(const GeneratorTuple& y, const std::vector<ProductMove>& moves) {
  std::optional<ProductMove> best;
  std::size_t best_gain = 0;
  for (const ProductMove& m : moves) {
    std::size_t before = y[m.i].length();
    std::size_t after = product_image(y, m).length();
    if (after < before && before - after > best_gain) {
      best_gain = before - after;
      best = m;
    }
  }
  return best;
}

using TupleKey = std::vector<std::vector<Letter>>;

TupleKey key_of(const GeneratorTuple& y) {
  TupleKey k;
  k.reserve(y.size());
  for (const FreeWord& w : y) k.emplace_back(w.letters().begin(), w.letters().end());
  return k;
}

/// Breadth-first search through equal-total-length tuples for one that admits a strict decrease.
std::optional<std::vector<ProductMove>> plateau_escape(const GeneratorTuple& start,
                                                       const std::vector<ProductMove>& moves,
                                                       std::size_t state_cap) {
  struct Node {
    GeneratorTuple tuple;
    std::size_t parent;
    ProductMove via;
  };
  std::vector<Node> nodes{{start, 0, {}}};
  std::map<TupleKey, std::size_t> seen{{key_of(start), 0}};
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (best_decrease(nodes[head].tuple, moves)) {
      std::vector<ProductMove> path;
      for (std::size_t k = head; k != 0; k = nodes[k].parent) path.push_back(nodes[k].via);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (const ProductMove& m : moves) {
      const GeneratorTuple& y = nodes[head].tuple;
      FreeWord image = product_image(y, m);
      if (image.length() != y[m.i].length()) continue;
      GeneratorTuple next = y;
      next[m.i] = std::move(image);
      auto [it, inserted] = seen.try_emplace(key_of(next), nodes.size());
      if (!inserted) continue;
      nodes.push_back({std::move(next), head, m});
      if (nodes.size() > state_cap) return std::nullopt;
    }
  }
  return std::nullopt;
}

constexpr std::size_t kPlateauStateCap = 20000;

}  // namespace

NielsenResult nielsen_reduce(const GeneratorTuple& tuple) {
  NielsenResult result;
  GeneratorTuple y = tuple;
  const auto moves = product_moves(y.size());
  for (;;) {
    if (auto m = best_decrease(y, moves)) {
      append_product_move(y, result.trace, *m);
      continue;
    }
    bool all_short = std::all_of(y.begin(), y.end(), [](const FreeWord& w) { return w.length() <= 1; });
    if (all_short) break;
    auto path = plateau_escape(y, moves, kPlateauStateCap);
    if (!path || path->empty()) break;
    for (const ProductMove& m : *path) append_product_move(y, result.trace, m);
  }
  std::erase_if(y, [](const FreeWord& w) { return w.empty(); });
  result.reduced = std::move(y);
  return result;
}

// ---------------------------------------------------------------------------
// Membership by folding. Each edge carries a word in the tuple's letters; with
// t(base) = 1 the label of any closed path at the base evaluates to the word read.

namespace {

struct Edge {
  int from, to;
  Letter letter;  // positive
  FreeWord label;
  bool alive = true;
};

class CoreGraph {
 public:
  CoreGraph(const GeneratorTuple& tuple) : m_(static_cast<int>(tuple.size())) {
    for (std::size_t k = 0; k < tuple.size(); ++k) add_petal(tuple[k], static_cast<int>(k) + 1);
    fold();
  }

  std::optional<FreeWord> read(const FreeWord& w) const {
    int cur = 0;
    FreeWord label({}, m_);
    for (Letter c : w.letters()) {
      const Edge* found = nullptr;
      for (const Edge& e : edges_) {
        if (!e.alive || e.letter != std::abs(c)) continue;
        if ((c > 0 && e.from == cur) || (c < 0 && e.to == cur)) {
          found = &e;
          break;
        }
      }
      if (!found) return std::nullopt;
      if (c > 0) {
        label = label * found->label;
        cur = found->to;
      } else {
        label = label * found->label.inverse();
        cur = found->from;
      }
    }
    if (cur != 0) return std::nullopt;
    return label;
  }

 private:
  int m_;
  int next_vertex_ = 1;
  std::vector<Edge> edges_;

  void add_petal(const FreeWord& y, int index) {
    auto letters = y.letters();
    if (letters.empty()) return;
    int prev = 0;
    for (std::size_t k = 0; k < letters.size(); ++k) {
      bool last = k + 1 == letters.size();
      int next = last ? 0 : next_vertex_++;
      FreeWord label = last ? FreeWord({index}, m_) : FreeWord({}, m_);
      Letter c = letters[k];
      if (c > 0)
        edges_.push_back({prev, next, c, label});
      else
        edges_.push_back({next, prev, -c, label.inverse()});
      prev = next;
    }
  }

  bool fold_once() {
    // (vertex, letter, outgoing?) -> edge
    std::map<std::tuple<int, Letter, bool>, std::size_t> ends;
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      const Edge& e = edges_[k];
      if (!e.alive) continue;
      for (bool out : {true, false}) {
        auto key = std::make_tuple(out ? e.from : e.to, e.letter, out);
        auto [it, inserted] = ends.try_emplace(key, k);
        if (!inserted) {
          merge(it->second, k, out);
          return true;
        }
      }
    }
    return false;
  }

  void merge(std::size_t e1, std::size_t e2, bool out) {
    int v1 = out ? edges_[e1].to : edges_[e1].from;
    int v2 = out ? edges_[e2].to : edges_[e2].from;
    FreeWord g1 = out ? edges_[e1].label : edges_[e1].label.inverse();
    FreeWord g2 = out ? edges_[e2].label : edges_[e2].label.inverse();
    if (v1 == v2) {
      edges_[e2].alive = false;
      return;
    }
    if (v2 == 0) {
      std::swap(v1, v2);
      std::swap(g1, g2);
      std::swap(e1, e2);
    }
    const FreeWord shift_out = g1.inverse() * g2;
    const FreeWord shift_in = g2.inverse() * g1;
    for (Edge& e : edges_) {
      if (!e.alive) continue;
      if (e.from == v2) {
        e.from = v1;
        e.label = shift_out * e.label;
      }
      if (e.to == v2) {
        e.to = v1;
        e.label = e.label * shift_in;
      }
    }
    edges_[e2].alive = false;
  }

  void fold() {
    while (fold_once()) {
    }
  }
};

int common_rank(const GeneratorTuple& tuple) {
  for (const FreeWord& w : tuple)
    if (w.rank() != tuple.front().rank()) throw std::invalid_argument("tuple words have different ranks");
  return tuple.empty() ? 0 : tuple.front().rank();
}

}  // namespace

Membership subgroup_membership(const GeneratorTuple& tuple, const FreeWord& w) {
  if (!tuple.empty() && common_rank(tuple) != w.rank()) throw std::invalid_argument("rank mismatch");
  CoreGraph graph(tuple);
  Membership result;
  if (auto expr = graph.read(w)) {
    result.member = true;
    result.expression = std::move(*expr);
  }
  return result;
}

FreeWord evaluate(const FreeWord& expression, const GeneratorTuple& tuple) {
  if (static_cast<std::size_t>(expression.rank()) != tuple.size())
    throw std::invalid_argument("expression rank differs from tuple size");
  int rank = tuple.empty() ? 0 : tuple.front().rank();
  FreeWord out({}, rank);
  for (Letter c : expression.letters()) {
    const FreeWord& y = tuple[static_cast<std::size_t>(std::abs(c)) - 1];
    out = out * (c > 0 ? y : y.inverse());
  }
  return out;
}

bool same_subgroup(const GeneratorTuple& a, const GeneratorTuple& b) {
  if (!a.empty() && !b.empty() && common_rank(a) != common_rank(b)) throw std::invalid_argument("rank mismatch");
  CoreGraph ga(a), gb(b);
  for (const FreeWord& w : b)
    if (!ga.read(w)) return false;
  for (const FreeWord& w : a)
    if (!gb.read(w)) return false;
  return true;
}

AutomorphismVerdict is_free_automorphism(const GeneratorTuple& images) {
  int rank = common_rank(images);
  if (images.empty() || static_cast<std::size_t>(rank) != images.size())
    throw std::invalid_argument("endomorphism needs exactly one image per generator");
  AutomorphismVerdict v;
  v.reduction = nielsen_reduce(images);
  const auto& red = v.reduction.reduced;
  if (red.size() == images.size()) {
    std::vector<bool> hit(images.size() + 1, false);
    bool ok = true;
    for (const FreeWord& w : red) {
      if (w.length() != 1 || hit[static_cast<std::size_t>(std::abs(w.letters()[0]))]) {
        ok = false;
        break;
      }
      hit[static_cast<std::size_t>(std::abs(w.letters()[0]))] = true;
    }
    v.automorphism = ok;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Whitehead

std::vector<WhiteheadMove> enumerate_whitehead_moves(int rank) {
  if (rank < 2) throw std::invalid_argument("Whitehead moves need rank >= 2");
  const std::size_t n = static_cast<std::size_t>(rank);
  std::vector<WhiteheadMove> moves;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      WhiteheadPermutation p{perm, std::vector<bool>(n)};
      for (std::size_t i = 0; i < n; ++i) p.invert[i] = (mask >> (n - 1 - i)) & 1u;
      moves.emplace_back(std::move(p));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::size_t combos = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) combos *= 4;
  for (int j = 1; j <= rank; ++j) {
    for (int sign : {1, -1}) {
      for (std::size_t code = 0; code < combos; ++code) {
        WhiteheadMultiplier m{sign * j, std::vector<WhiteheadAction>(n, WhiteheadAction::fix)};
        std::size_t rest = code;
        // Most significant digit belongs to the lowest free generator.
        for (std::size_t gi = n; gi-- > 0;) {
          if (static_cast<int>(gi) + 1 == j) continue;
          m.actions[gi] = static_cast<WhiteheadAction>(rest % 4);
          rest /= 4;
        }
        moves.emplace_back(std::move(m));
      }
    }
  }
  return moves;
}

FreeWord whitehead_image(const WhiteheadMove& move, int generator, int rank) {
  const std::size_t gi = static_cast<std::size_t>(generator) - 1;
  if (const auto* p = std::get_if<WhiteheadPermutation>(&move)) {
    int target = p->perm[gi];
    return FreeWord({p->invert[gi] ? -target : target}, rank);
  }
  const auto& m = std::get<WhiteheadMultiplier>(move);
  FreeWord x({generator}, rank);
  if (std::abs(m.multiplier) == generator) return x;
  FreeWord a({m.multiplier}, rank);
  switch (m.actions[gi]) {
    case WhiteheadAction::fix:
      return x;
    case WhiteheadAction::right_multiply:
      return x * a;
    case WhiteheadAction::left_multiply_inverse:
      return a.inverse() * x;
    case WhiteheadAction::conjugate:
      return a.inverse() * x * a;
  }
  return x;
}

FreeWord apply_whitehead(const WhiteheadMove& move, const FreeWord& w) {
  const int rank = w.rank();
  std::vector<FreeWord> images;
  images.reserve(static_cast<std::size_t>(rank));
  for (int g = 1; g <= rank; ++g) images.push_back(whitehead_image(move, g, rank));
  std::vector<Letter> raw;
  for (Letter c : w.letters()) {
    const FreeWord& img = images[static_cast<std::size_t>(std::abs(c)) - 1];
    if (c > 0)
      raw.insert(raw.end(), img.letters().begin(), img.letters().end());
    else
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) raw.push_back(-*it);
  }
  return FreeWord(std::move(raw), rank);
}

CyclicWord apply_whitehead(const WhiteheadMove& move, const CyclicWord& w) {
  return CyclicWord(apply_whitehead(move, w.word()));
}

WhiteheadMove inverse(const WhiteheadMove& move) {
  if (const auto* p = std::get_if<WhiteheadPermutation>(&move)) {
    const std::size_t n = p->perm.size();
    WhiteheadPermutation inv{std::vector<int>(n), std::vector<bool>(n)};
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t target = static_cast<std::size_t>(p->perm[i]) - 1;
      inv.perm[target] = static_cast<int>(i) + 1;
      inv.invert[target] = p->invert[i];
    }
    return inv;
  }
  WhiteheadMultiplier m = std::get<WhiteheadMultiplier>(move);
  m.multiplier = -m.multiplier;
  return m;
}

CyclicWord replay(const CyclicWord& start, const MoveTrace& trace) {
  CyclicWord cur = start;
  for (const TraceStep& step : trace) {
    const auto* move = std::get_if<WhiteheadMove>(&step.move);
    if (!move) throw std::invalid_argument("Nielsen move in a Whitehead trace");
    cur = apply_whitehead(*move, cur);
  }
  return cur;
}

namespace {

struct MoveTable {
  std::vector<WhiteheadMove> all;
  std::vector<std::size_t> multiplier_moves;
};

const MoveTable& move_table(int rank) {
  static thread_local std::map<int, MoveTable> cache;
  auto it = cache.find(rank);
  if (it == cache.end()) {
    MoveTable t;
    t.all = enumerate_whitehead_moves(rank);
    for (std::size_t k = 0; k < t.all.size(); ++k)
      if (std::holds_alternative<WhiteheadMultiplier>(t.all[k])) t.multiplier_moves.push_back(k);
    it = cache.emplace(rank, std::move(t)).first;
  }
  return it->second;
}

}  // namespace

MinimizeResult whitehead_minimize(const CyclicWord& w) {
  MinimizeResult result{w, {}};
  if (w.length() <= 1 || w.rank() < 2) return result;
  const MoveTable& table = move_table(w.rank());
  for (;;) {
    const CyclicWord& cur = result.minimal;
    std::optional<std::size_t> best;
    CyclicWord best_word;
    for (std::size_t k : table.multiplier_moves) {
      CyclicWord image = apply_whitehead(table.all[k], cur);
      if (image.length() < (best ? best_word.length() : cur.length())) {
        best = k;
        best_word = std::move(image);
      }
    }
    if (!best) break;
    result.minimal = std::move(best_word);
    result.trace.push_back(TraceStep{table.all[*best], result.minimal.length()});
  }
  return result;
}

PrimitivityVerdict is_primitive(const FreeWord& w) {
  if (w.empty()) throw std::invalid_argument("the empty word is not primitive-testable");
  PrimitivityVerdict v;
  v.minimization = whitehead_minimize(cyclic_reduce(w));
  v.primitive = v.minimization.minimal.length() == 1;
  return v;
}

ConjugacyVerdict automorphic_conjugacy(const FreeWord& u, const FreeWord& v, std::size_t budget) {
  if (u.rank() != v.rank()) throw std::invalid_argument("rank mismatch");
  ConjugacyVerdict verdict;
  const CyclicWord cu = cyclic_reduce(u), cv = cyclic_reduce(v);
  if (cu == cv) {
    verdict.outcome = ConjugacyOutcome::equivalent;
    return verdict;
  }
  if (cu.length() == 0 || cv.length() == 0) return verdict;
  const MoveTable& table = move_table(u.rank());

  // A single move relating the inputs directly gives the shortest certificate.
  if (cu.length() == cv.length()) {
    for (const WhiteheadMove& m : table.all) {
      if (apply_whitehead(m, cu) == cv) {
        verdict.outcome = ConjugacyOutcome::equivalent;
        verdict.trace.push_back(TraceStep{m, cv.length()});
        return verdict;
      }
    }
  }

  MinimizeResult mu = whitehead_minimize(cu), mv = whitehead_minimize(cv);
  if (mu.minimal.length() != mv.minimal.length()) return verdict;

  struct Node {
    CyclicWord word;
    std::size_t parent;
    std::size_t via;
  };
  std::vector<Node> nodes{{mu.minimal, 0, 0}};
  std::map<CyclicWord, std::size_t> seen{{mu.minimal, 0}};
  std::optional<std::size_t> found;
  if (mu.minimal == mv.minimal) found = 0;
  for (std::size_t head = 0; !found && head < nodes.size(); ++head) {
    for (std::size_t k = 0; k < table.all.size(); ++k) {
      CyclicWord image = apply_whitehead(table.all[k], nodes[head].word);
      if (image.length() != mu.minimal.length()) continue;
      auto [it, inserted] = seen.try_emplace(image, nodes.size());
      if (!inserted) continue;
      nodes.push_back({image, head, k});
      if (image == mv.minimal) {
        found = nodes.size() - 1;
        break;
      }
      if (nodes.size() > budget) {
        verdict.outcome = ConjugacyOutcome::budget_exceeded;
        verdict.states_visited = nodes.size();
        return verdict;
      }
    }
  }
  verdict.states_visited = nodes.size();
  if (!found) return verdict;

  verdict.outcome = ConjugacyOutcome::equivalent;
  verdict.trace = mu.trace;
  std::vector<std::size_t> path;
  for (std::size_t k = *found; k != 0; k = nodes[k].parent) path.push_back(nodes[k].via);
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    verdict.trace.push_back(TraceStep{table.all[*it], mu.minimal.length()});
  CyclicWord cur = mv.minimal;
  for (auto it = mv.trace.rbegin(); it != mv.trace.rend(); ++it) {
    WhiteheadMove inv = inverse(std::get<WhiteheadMove>(it->move));
    cur = apply_whitehead(inv, cur);
    verdict.trace.push_back(TraceStep{inv, cur.length()});
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Text

namespace {

struct WordToken {
  Letter letter;  // 0 marks the identity token
  long power;
};

std::vector<WordToken> tokenize_word(std::string_view text) {
  std::vector<WordToken> tokens;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(what + " at position " + std::to_string(pos) + " in word '" + std::string(text) + "'");
  };
  while (pos < text.size()) {
    char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
      ++pos;
      continue;
    }
    Letter letter = 0;
    if (c == '1') {
      ++pos;
    } else if ((c == 'x' || c == 'X') && pos + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
      std::size_t start = ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      letter = std::stoi(std::string(text.substr(start, pos - start)));
      if (letter == 0) fail("generator index 0");
      if (c == 'X') letter = -letter;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      letter = std::islower(static_cast<unsigned char>(c)) ? c - 'a' + 1 : -(c - 'A' + 1);
      ++pos;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    long power = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      bool neg = false;
      if (pos < text.size() && text[pos] == '-') {
        neg = true;
        ++pos;
      }
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) fail("expected an exponent");
      power = std::stol(std::string(text.substr(start, pos - start)));
      if (neg) power = -power;
    }
    tokens.push_back({letter, power});
  }
  return tokens;
}

}  // namespace

FreeWord parse_word(std::string_view text, int rank) {
  std::vector<Letter> raw;
  for (const WordToken& t : tokenize_word(text)) {
    if (t.letter == 0) continue;
    Letter l = t.power < 0 ? -t.letter : t.letter;
    for (long k = 0; k < std::labs(t.power); ++k) raw.push_back(l);
  }
  return FreeWord(std::move(raw), rank);
}

GeneratorTuple parse_tuple(std::string_view text, int rank) {
  std::string s(text);
  std::erase_if(s, [](char c) { return c == '(' || c == ')'; });
  GeneratorTuple tuple;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) tuple.push_back(parse_word(item, rank));
  if (tuple.empty()) throw std::invalid_argument("empty tuple");
  return tuple;
}

int infer_rank(std::string_view text) {
  int rank = 2;
  std::string s(text);
  std::erase_if(s, [](char c) { return c == '(' || c == ')' || c == ','; });
  for (const WordToken& t : tokenize_word(s)) rank = std::max(rank, std::abs(t.letter));
  return rank;
}

std::string format(const FreeWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (Letter l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += "x" + std::to_string(std::abs(l));
    if (l < 0) out += "^-1";
  }
  return out;
}

std::string format(const CyclicWord& w) { return format(w.word()); }

std::string format(const GeneratorTuple& tuple) {
  std::string out = "(";
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (k) out += ", ";
    out += format(tuple[k]);
  }
  return out + ")";
}

std::string format(const NielsenMove& move) {
  return std::visit(
      [](const auto& m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, N1>) {
          std::string yi = "y" + std::to_string(m.i + 1), yj = "y" + std::to_string(m.j + 1);
          return "N1: " + yi + " -> " + (m.side == Side::right ? yi + " " + yj : yj + " " + yi);
        } else if constexpr (std::is_same_v<M, N2>) {
          std::string yi = "y" + std::to_string(m.i + 1);
          return "N2: " + yi + " -> " + yi + "^-1";
        } else {
          return "N3: swap y" + std::to_string(m.i + 1) + ", y" + std::to_string(m.j + 1);
        }
      },
      move);
}

std::string format(const WhiteheadMove& move) {
  int rank = std::holds_alternative<WhiteheadPermutation>(move)
                 ? static_cast<int>(std::get<WhiteheadPermutation>(move).perm.size())
                 : static_cast<int>(std::get<WhiteheadMultiplier>(move).actions.size());
  std::string out = std::holds_alternative<WhiteheadPermutation>(move) ? "W-perm {" : "W-mult {";
  for (int g = 1; g <= rank; ++g) {
    if (g > 1) out += ", ";
    out += "x" + std::to_string(g) + " -> " + format(whitehead_image(move, g, rank));
  }
  return out + "}";
}

}  // namespace combalg::fg

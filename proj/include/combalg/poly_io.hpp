#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "combalg/polynomial.hpp"

namespace combalg {

/// Syntax error carrying the 0-based character offset of the failure.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Canonical names: t for one variable, x and y for two, x1..xn otherwise.
std::vector<std::string> variable_names(std::size_t nvars);

/// Grammar: sums of products of rational literals (p or p/q), variables, parenthesized
/// expressions and nonnegative integer powers (^). `*` may be omitted between factors.
/// Accepted names: the canonical ones plus x1..xn (and x for t when nvars == 1).
Polynomial parse_polynomial(std::string_view text, std::size_t nvars = 2);

/// "(p1, p2, ...)" or "p1, p2, ..."; arity equals nvars.
PolyMap parse_polymap(std::string_view text, std::size_t nvars = 2);

/// Descending deglex with explicit `*`, e.g. "x^2*y + 3/2*x - 1".
std::string format(const Polynomial& p);
std::string format(const PolyMap& phi);

}  // namespace combalg

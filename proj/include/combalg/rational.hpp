#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace combalg {

/// Exact rational scalar. Always canonical: positive denominator, lowest terms.
using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_one(const Rational& q) { return q == 1; }
inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

/// "p" or "p/q".
std::string to_string(const Rational& q);

/// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace combalg

#pragma once

#include <random>

#include "combalg/polynomial.hpp"

namespace combalg::testing {

/// Up to `terms` terms of total degree <= max_deg with small integer coefficients.
inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t nvars, unsigned max_deg, unsigned terms) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::vector<Term> out;
  for (unsigned k = 0; k < terms; ++k) {
    Monomial m(nvars);
    unsigned budget = deg(rng);
    for (std::size_t v = 0; v + 1 < nvars; ++v) {
      unsigned e = std::uniform_int_distribution<unsigned>(0, budget)(rng);
      m.set(v, e);
      budget -= e;
    }
    m.set(nvars - 1, budget);
    out.push_back(Term{Rational(coef(rng)), m});
  }
  return Polynomial::from_terms(nvars, std::move(out));
}

}  // namespace combalg::testing

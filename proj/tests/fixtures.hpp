#pragma once

#include <string>
#include <vector>

#include "combalg/poly_io.hpp"

namespace combalg::testing {

inline std::vector<Polynomial> parse_list(const std::string& text, std::size_t nvars) {
  std::vector<Polynomial> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    out.push_back(parse_polynomial(text.substr(start, end - start), nvars));
    start = end + 1;
  }
  return out;
}

/// Twenty small ideals in two and three variables.
inline std::vector<std::vector<Polynomial>> ideal_fixtures() {
  const char* two[] = {
      "x, y",
      "1 + 2*x*y, x^2",
      "x^2",
      "x^2 - y, x*y - 1",
      "x^3 - 2*x*y, x^2*y - 2*y^2 + x",
      "x^2 + y^2 - 1, x - y",
      "x*y - 1, y^2 - x",
      "x^2*y + x*y^2, x^2 - y",
      "y^3 - x^2, x^3 - y^2",
      "x^4 + y, x*y^2 + 3/2*x",
      "1 + 4*x*y + 4*y^3, 2*x + 2*y^2",
      "x^2 - 2*x*y + y^2, x - y + 1",
      "x^5 - y^3, x^2*y - 1",
      "2*x*y, x^2",
  };
  const char* three[] = {
      "x1^2 + x2, x2*x3 - 1, x1 - x3^2",
      "x1*x2 - x3, x2*x3 - x1, x3*x1 - x2",
      "x1 + x2 + x3, x1*x2 + x2*x3 + x3*x1, x1*x2*x3 - 1",
      "x1^2 - x2^2, x2^2 - x3^2, x1*x2*x3",
      "x1^3 - x2, x2^3 - x3",
      "x1*x2 + 1, x1*x3 + 1, x2 - x3 + 1",
  };
  std::vector<std::vector<Polynomial>> out;
  for (const char* t : two) out.push_back(parse_list(t, 2));
  for (const char* t : three) out.push_back(parse_list(t, 3));
  return out;
}

}  // namespace combalg::testing

#include "combalg/poly_io.hpp"

#include <cctype>
#include <sstream>

namespace combalg {

std::vector<std::string> variable_names(std::size_t nvars) {
  if (nvars == 1) return {"t"};
  if (nvars == 2) return {"x", "y"};
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  Polynomial parse_all() {
    Polynomial p = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

  /// Parses one expression and stops before a top-level ',' or ')'.
  Polynomial expression() {
    skip_ws();
    Polynomial acc(nvars_);
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = text_[pos_] == '-';
      ++pos_;
    }
    Polynomial t = product();
    acc = negate ? -t : t;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial rhs = product();
      if (c == '+')
        acc += rhs;
      else
        acc -= rhs;
    }
    return acc;
  }

  std::size_t position() const { return pos_; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

 private:
  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;

  bool starts_factor() const {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  Polynomial product() {
    Polynomial acc = power();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        acc = acc * power();
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial power() {
    Polynomial base = atom();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    std::size_t start = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a nonnegative integer exponent");
    unsigned long e = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
      if (e > 1'000'000) throw ParseError("exponent too large", start);
      ++pos_;
    }
    return pow(base, static_cast<unsigned>(e));
  }

  Integer integer_literal() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      expect(')');
      return inner;
    }
    if (c == '-' || c == '+') {
      ++pos_;
      Polynomial inner = power();
      return c == '-' ? -inner : inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = integer_literal();
      Integer den = 1;
      std::size_t save = pos_;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator");
        std::size_t den_pos = pos_;
        den = integer_literal();
        if (den == 0) throw ParseError("zero denominator", den_pos);
      } else {
        pos_ = save;
      }
      Rational q(num, den);
      q.canonicalize();
      return Polynomial::constant(nvars_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return variable();
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Polynomial variable() {
    std::size_t start = pos_;
    std::size_t end = pos_;
    while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
    // A letter followed by digits is an indexed variable (x12).
    std::size_t digits_end = end;
    while (digits_end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[digits_end]))) ++digits_end;
    std::string_view word = text_.substr(start, digits_end - start);
    const auto names = variable_names(nvars_);
    // Single letters may be juxtaposed ("xy"), so try the longest match first.
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (word == names[i]) {
        pos_ = digits_end;
        return Polynomial::variable(nvars_, i);
      }
    }
    if (text_[start] == 'x' && digits_end > start + 1 && end == start + 1) {
      std::size_t idx = std::stoul(std::string(text_.substr(start + 1, digits_end - start - 1)));
      if (idx >= 1 && idx <= nvars_) {
        pos_ = digits_end;
        return Polynomial::variable(nvars_, idx - 1);
      }
      fail("variable index out of range");
    }
    if (nvars_ == 1 && text_[start] == 'x' && (start + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[start + 1])))) {
      pos_ = start + 1;
      return Polynomial::variable(1, 0);
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].size() == 1 && text_[start] == names[i][0]) {
        pos_ = start + 1;
        return Polynomial::variable(nvars_, i);
      }
    }
    fail("unknown variable '" + std::string(word) + "'");
  }
};

void append_monomial(std::ostringstream& out, const Monomial& m, const std::vector<std::string>& names) {
  bool first = true;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!first) out << '*';
    out << names[i];
    if (m[i] > 1) out << '^' << m[i];
    first = false;
  }
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  PolyParser parser(text, nvars);
  return parser.parse_all();
}

PolyMap parse_polymap(std::string_view text, std::size_t nvars) {
  PolyParser parser(text, nvars);
  parser.skip_ws();
  bool parenthesized = false;
  // "(p, q)" versus a leading parenthesized factor such as "(x+y)^2, y".
  {
    std::size_t depth = 0;
    bool top_comma = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')' && depth > 0) --depth;
      if (text[i] == ',' && depth == 1) top_comma = true;
      if (text[i] == ',' && depth == 0) {
        top_comma = false;
        break;
      }
    }
    parenthesized = parser.peek() == '(' && top_comma;
  }
  if (parenthesized) parser.expect('(');
  std::vector<Polynomial> images;
  for (;;) {
    images.push_back(parser.expression());
    parser.skip_ws();
    if (parser.peek() == ',') {
      parser.expect(',');
      continue;
    }
    break;
  }
  if (parenthesized) parser.expect(')');
  parser.skip_ws();
  if (parser.position() != text.size()) parser.fail("unexpected trailing input");
  if (images.size() != nvars)
    throw ParseError("map needs " + std::to_string(nvars) + " components, got " + std::to_string(images.size()),
                     parser.position());
  return PolyMap(std::move(images));
}

std::string format(const Polynomial& p) {
  if (p.is_zero()) return "0";
  const auto names = variable_names(p.nvars());
  std::ostringstream out;
  bool first = true;
  for (const Term& t : p.terms()) {
    Rational c = t.coeff;
    if (first) {
      if (sgn(c) < 0) out << '-';
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    c = abs(c);
    if (t.mono.is_one()) {
      out << to_string(c);
    } else {
      if (c != 1) out << to_string(c) << '*';
      append_monomial(out, t.mono, names);
    }
    first = false;
  }
  return out.str();
}

std::string format(const PolyMap& phi) {
  std::string s = "(";
  for (std::size_t i = 0; i < phi.arity(); ++i) {
    if (i) s += ", ";
    s += format(phi[i]);
  }
  return s + ")";
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

}  // namespace combalg

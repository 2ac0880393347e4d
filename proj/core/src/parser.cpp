#include "jacobi/parser.hpp"

#include <cctype>
#include <unordered_map>

#include "jacobi/errors.hpp"

namespace jacobi {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::unordered_map<std::string, Variable> scope)
      : s_(text), scope_(std::move(scope)) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_), pos_);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool digit_at(std::size_t p) const { return p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p])); }

  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (digit_at(pos_)) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(s_.substr(start, pos_ - start)), 10);
  }

  RationalFunction expr() {
    bool negate = false;
    if (const char c = peek(); c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    RationalFunction acc = term();
    if (negate) acc = -acc;
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      const RationalFunction rhs = term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
  }

  RationalFunction term() {
    RationalFunction acc = factor(false);
    for (;;) {
      const char c = peek();
      if (c != '*' && c != '/') return acc;
      const std::size_t at = pos_++;
      RationalFunction rhs = factor(c == '/');
      if (c == '*') {
        acc = acc * rhs;
      } else {
        if (rhs.is_zero()) {
          pos_ = at;
          throw Error(ErrorKind::ZeroDenominator, "division by zero at offset " + std::to_string(at));
        }
        acc = acc / rhs;
      }
    }
  }

  RationalFunction factor(bool after_slash) {
    RationalFunction b = base(after_slash);
    if (peek() == '^') {
      ++pos_;
      const Integer e = integer();
      if (!e.fits_uint_p() || e > 1000) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(e.get_ui()));
    }
    return b;
  }

  RationalFunction base(bool after_slash) {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      RationalFunction inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      const Integer num = integer();
      if (!after_slash && literal_denominator_follows()) {
        ++pos_;  // '/'
        const Integer den = integer();
        if (den == 0) {
          pos_ = start;
          throw Error(ErrorKind::ZeroDenominator, "zero denominator in literal at offset " + std::to_string(start));
        }
        Rational q(num, den);
        q.canonicalize();
        return RationalFunction(q);
      }
      return RationalFunction(Rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      const auto it = scope_.find(name);
      if (it == scope_.end())
        throw Error(ErrorKind::UndeclaredIdentifier,
                    "undeclared identifier '" + name + "' at offset " + std::to_string(start));
      return RationalFunction(Poly(it->second));
    }
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // After an integer: is the next token "/<digits>" not followed by '^'?
  bool literal_denominator_follows() {
    std::size_t p = pos_;
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    if (p >= s_.size() || s_[p] != '/') return false;
    ++p;
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    if (!digit_at(p)) return false;
    while (digit_at(p)) ++p;
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    return p >= s_.size() || s_[p] != '^';
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, Variable> scope_;
};

}  // namespace

RationalFunction parse_expression(std::string_view text, const std::vector<std::string>& vars,
                                  const std::vector<std::string>& params) {
  std::vector<std::string> all = vars;
  all.insert(all.end(), params.begin(), params.end());
  return parse_expression(text, all);
}

RationalFunction parse_expression(std::string_view text, const std::vector<std::string>& identifiers) {
  std::unordered_map<std::string, Variable> scope;
  for (const auto& name : identifiers) {
    if (!is_identifier(name)) throw Error(ErrorKind::InvalidArgument, "invalid identifier '" + name + "'");
    scope.emplace(name, Variable::named(name));
  }
  return Parser(text, std::move(scope)).parse();
}

Poly parse_polynomial(std::string_view text, const std::vector<std::string>& identifiers) {
  RationalFunction f = parse_expression(text, identifiers);
  if (!f.is_polynomial()) throw ParseError("expression is not a polynomial: " + f.to_string(), 0);
  return f.numer().scaled(Rational(1) / f.denom().leading_coeff());
}

}  // namespace jacobi

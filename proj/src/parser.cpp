// Recursive-descent parser for the input grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' nat)?
//   base   := 'x' | 'y' | 'i' | ident | number | '(' expr ')'
//   number := integer | integer '/' integer

#include <cctype>

#include "bilip/errors.hpp"
#include "bilip/polynomial.hpp"

namespace bilip {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::map<std::string, Scalar>& params)
      : text_(text), params_(params) {}

  BivarPoly parse() {
    BivarPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BivarPoly expr() {
    BivarPoly acc;
    if (accept('-')) acc = -term();
    else acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  BivarPoly term() {
    BivarPoly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  BivarPoly factor() {
    BivarPoly b = base();
    if (!accept('^')) return b;
    const std::size_t at = pos_;
    char c = peek();
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      if (c == '-' || c == '(' || std::isalpha(static_cast<unsigned char>(c)) || c == '_')
        fail(ErrorKind::NonIntegerExponent, "exponent at position " + std::to_string(at) + " is not a natural number");
      throw SyntaxError(at, "expected exponent after '^'");
    }
    Integer n = integer();
    if (peek() == '/') fail(ErrorKind::NonIntegerExponent, "exponent at position " + std::to_string(at) + " is a fraction");
    if (n > 100000) throw SyntaxError(at, "exponent too large");
    return b.pow(static_cast<int>(n.get_si()));
  }

  Integer integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError(start, "expected integer");
    return Integer(text_.substr(start, pos_ - start));
  }

  BivarPoly base() {
    char c = peek();
    const std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      BivarPoly inner = expr();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = integer();
      if (accept('/')) {
        Integer den = integer();
        if (den == 0) throw SyntaxError(at, "zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return BivarPoly(Scalar(q));
      }
      return BivarPoly(Scalar(Rational(num)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      if (name == "x") return BivarPoly::x();
      if (name == "y") return BivarPoly::y();
      if (name == "i") return BivarPoly(Scalar::i());
      auto it = params_.find(name);
      if (it == params_.end()) fail(ErrorKind::UnboundParameter, name);
      return BivarPoly(it->second);
    }
    if (c == '\0') throw SyntaxError(at, "unexpected end of input");
    throw SyntaxError(at, std::string("unexpected '") + c + "'");
  }

  const std::string& text_;
  const std::map<std::string, Scalar>& params_;
  std::size_t pos_ = 0;
};

}  // namespace

BivarPoly parse_poly(const std::string& text, const std::map<std::string, Scalar>& params) {
  return Parser(text, params).parse();
}

Scalar parse_scalar(const std::string& text) {
  BivarPoly p = parse_poly(text);
  if (!p.is_constant()) fail(ErrorKind::InvalidArgument, "'" + text + "' is not a constant");
  return p.coeff(0, 0);
}

}  // namespace bilip

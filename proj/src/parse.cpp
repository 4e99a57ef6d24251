#include "pf/parse.hpp"

#include <cctype>
#include <string>

#include "pf/errors.hpp"

namespace pf {

namespace {

class Parser
{
public:
  explicit Parser(std::string_view src) : s_(src) {}

  RatBiPoly parse()
  {
    skip();
    if (at_end()) throw ParseError(pos_, "empty expression");
    RatBiPoly p = expr();
    skip();
    if (!at_end()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek()
  {
    skip();
    return at_end() ? '\0' : s_[pos_];
  }
  void skip()
  {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  RatBiPoly expr()
  {
    RatBiPoly acc = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      RatBiPoly t = term();
      if (c == '+') acc += t;
      else acc -= t;
    }
    return acc;
  }

  bool starts_factor(char c) const
  {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'y' || c == '(';
  }

  RatBiPoly term()
  {
    RatBiPoly acc = unary();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= unary();
      } else if (c == '/') {
        ++pos_;
        skip();
        std::size_t at = pos_;
        Rational d = number();
        if (d.is_zero()) throw ParseError(at, "division by zero");
        acc = (Rational(1) / d) * acc;
      } else if (starts_factor(c)) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  RatBiPoly unary()
  {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  RatBiPoly power()
  {
    RatBiPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t at = pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError(at, "exponent must be a nonnegative integer");
      Rational e = number();
      if (!e.is_integer() || e > Rational(1000)) throw ParseError(at, "exponent must be a small nonnegative integer");
      base = pf::pow(base, static_cast<int>(e.to_double()));
    }
    return base;
  }

  RatBiPoly primary()
  {
    char c = peek();
    if (c == '\0') throw ParseError(pos_, "unexpected end of input");
    if (c == '(') {
      ++pos_;
      RatBiPoly inner = expr();
      if (peek() != ')') throw ParseError(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      return RatBiPoly::x();
    }
    if (c == 'y') {
      ++pos_;
      return RatBiPoly::y();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RatBiPoly(number());
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  // Unsigned integer literal.
  Rational number()
  {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(pos_, "expected a number");
    return Rational(mpz_class(std::string(s_.substr(start, pos_ - start)), 10));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

RatBiPoly parse_polynomial(std::string_view src)
{
  return Parser(src).parse();
}

OneForm parse_one_form(std::string_view src)
{
  int depth = 0;
  std::size_t comma = std::string_view::npos;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == '(') ++depth;
    else if (src[i] == ')') --depth;
    else if (src[i] == ',' && depth == 0) {
      if (comma != std::string_view::npos) throw ParseError(i, "more than one top-level comma in form");
      comma = i;
    }
  }
  if (comma == std::string_view::npos) throw ParseError(src.size(), "form must be written as P,Q (dx and dy coefficients)");
  RatBiPoly p = parse_polynomial(src.substr(0, comma));
  try {
    return {std::move(p), parse_polynomial(src.substr(comma + 1))};
  } catch (const ParseError& e) {
    throw ParseError(e.position + comma + 1, std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

} // namespace pf

#pragma once

#include "realnull/poly.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace realnull {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

// Recursive-descent parser for
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' unary) | ('/' number))*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := number ('/' number)? | identifier | '(' expr ')'
// Implicit multiplication is rejected.
class PolyParser {
 public:
  PolyParser(std::string_view text, ContextPtr ctx) : text_(text), ctx_(std::move(ctx)) {}

  Poly parse() {
    skipSpace();
    if (pos_ == text_.size()) throw ParseError("empty polynomial", pos_);
    Poly p = expr();
    skipSpace();
    if (pos_ != text_.size())
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool atDigit() {
    skipSpace();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  Integer integer() {
    skipSpace();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Rational number() {
    Integer num = integer();
    std::size_t save = pos_;
    if (accept('/')) {
      if (!atDigit()) {
        pos_ = save;
        return Rational(num);
      }
      std::size_t at = pos_;
      Integer den = integer();
      if (den == 0) throw ParseError("division by zero", at);
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    return Rational(num);
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      skipSpace();
      if (accept('*')) {
        acc *= unary();
      } else if (pos_ < text_.size() && text_[pos_] == '/') {
        std::size_t at = ++pos_;
        if (!atDigit()) throw ParseError("division is only allowed by a numeric literal", at);
        Rational d = number();
        if (sgn(d) == 0) throw ParseError("division by zero", at);
        acc = acc.scaled(1 / d);
      } else {
        skipSpace();
        if (pos_ < text_.size() &&
            (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '(' ||
             text_[pos_] == '_'))
          throw ParseError("implicit multiplication is not allowed; use '*'", pos_);
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (accept('^')) {
      std::size_t at = pos_;
      if (!atDigit()) throw ParseError("exponent must be a non-negative integer", at);
      Integer e = integer();
      if (e > 100000) throw ParseError("exponent too large", at);
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Poly primary() {
    skipSpace();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(ctx_, number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      auto name = text_.substr(start, pos_ - start);
      auto idx = ctx_->indexOf(name);
      if (!idx) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return Poly::variable(ctx_, *idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  ContextPtr ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parsePoly(std::string_view text, const ContextPtr& ctx) {
  return detail::PolyParser(text, ctx).parse();
}

}  // namespace realnull

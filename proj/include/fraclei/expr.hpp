#ifndef FRACLEI_EXPR_HPP
#define FRACLEI_EXPR_HPP

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <string_view>

#include "fraclei/errors.hpp"
#include "fraclei/genpoly.hpp"

namespace fraclei {

/// Named numeric constants visible to the parser, e.g. {"alpha", 0.5}. In an
/// exponent they allow `x2^alpha` or `x2^(1+alpha)`; in factor position they
/// act as numeric coefficients.
using SymbolTable = std::map<std::string, double>;

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view src, const SymbolTable& symbols) : src_(src), symbols_(symbols) {}

  GenPolynomial parse() {
    GenPolynomial p = expression();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

 private:
  // expression := term (('+'|'-') term)*
  GenPolynomial expression() {
    skip_ws();
    GenPolynomial acc = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  // term := [sign] factor ('*' factor)*
  GenPolynomial term() {
    skip_ws();
    double sign = 1.0;
    while (peek() == '-' || peek() == '+') {
      if (src_[pos_] == '-') sign = -sign;
      ++pos_;
      skip_ws();
    }
    GenPolynomial acc = factor();
    for (;;) {
      skip_ws();
      if (!accept('*')) break;
      acc = acc * factor();
    }
    return sign == 1.0 ? acc : -acc;
  }

  // factor := number | ident ['^' exponent] | '(' expression ')' ['^' integer]
  GenPolynomial factor() {
    skip_ws();
    const std::size_t start = pos_;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return GenPolynomial::constant(number());
    }
    if (c == '(') {
      ++pos_;
      GenPolynomial inner = expression();
      skip_ws();
      if (!accept(')')) fail("expected ')'");
      skip_ws();
      if (accept('^')) {
        skip_ws();
        const std::size_t at = pos_;
        const double e = number();
        if (e < 0 || e != std::floor(e)) fail_at("parenthesized power must be a nonnegative integer", at);
        GenPolynomial r = GenPolynomial::constant(1.0);
        for (int i = 0; i < static_cast<int>(e); ++i) r = r * inner;
        return r;
      }
      return inner;
    }
    if (is_ident_start(c)) {
      const std::string name = ident();
      if (auto it = symbols_.find(name); it != symbols_.end()) {
        skip_ws();
        if (peek() == '^') fail("power of a named constant is not supported");
        return GenPolynomial::constant(it->second);
      }
      skip_ws();
      double e = 1.0;
      if (accept('^')) e = exponent();
      if (e < 0) fail_at("negative exponent", start);
      return GenPolynomial::variable(name, e);
    }
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  // exponent := number | symbol | '(' expterm (('+'|'-') expterm)* ')'
  double exponent() {
    skip_ws();
    if (accept('(')) {
      double acc = exp_term();
      for (;;) {
        skip_ws();
        if (accept('+')) {
          acc += exp_term();
        } else if (accept('-')) {
          acc -= exp_term();
        } else {
          break;
        }
      }
      skip_ws();
      if (!accept(')')) fail("expected ')' in exponent");
      return acc;
    }
    return exp_atom();
  }

  // expterm := atom ('*' atom)*
  double exp_term() {
    double v = exp_atom();
    for (;;) {
      skip_ws();
      if (!accept('*')) return v;
      v *= exp_atom();
    }
  }

  double exp_atom() {
    skip_ws();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (is_ident_start(c)) {
      const std::size_t at = pos_;
      const std::string name = ident();
      auto it = symbols_.find(name);
      if (it == symbols_.end()) fail_at("unknown symbol '" + name + "' in exponent", at);
      return it->second;
    }
    fail("expected exponent");
  }

  double number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (pos_ == start || (pos_ == start + 1 && src_[start] == '.')) fail_at("malformed number", start);
    if (peek() == 'e' || peek() == 'E') {
      std::size_t save = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = save;
      } else {
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    return std::strtod(text.c_str(), nullptr);
  }

  std::string ident() {
    const std::size_t start = pos_;
    while (is_ident_char(peek())) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  std::string_view src_;
  const SymbolTable& symbols_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the field-expression grammar into a canonical GenPolynomial.
/// Errors carry the byte offset of the offending character.
inline GenPolynomial parse_expression(std::string_view src, const SymbolTable& symbols = {}) {
  return detail::ExprParser(src, symbols).parse();
}

/// Parses "x1=4,x2=0.5" into a point.
inline Point parse_point(std::string_view src) {
  Point p;
  std::size_t pos = 0;
  while (pos < src.size()) {
    std::size_t comma = src.find(',', pos);
    if (comma == std::string_view::npos) comma = src.size();
    const std::string_view item = src.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) throw ParseError("expected name=value", pos);
    const std::string value(item.substr(eq + 1));
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') throw ParseError("malformed value", pos + eq + 1);
    std::string name(item.substr(0, eq));
    p[name] = v;
    pos = comma + 1;
  }
  return p;
}

}  // namespace fraclei

#endif  // FRACLEI_EXPR_HPP

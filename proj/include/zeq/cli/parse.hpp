#pragma once

// Recursive-descent parser for polynomial expressions.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer ('/' integer)? | identifier | '(' expr ')'

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "zeq/error.hpp"
#include "zeq/poly/mpoly.hpp"

namespace zeq {

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  MPoly run() {
    skip_space();
    if (pos_ == src_.size()) fail("empty expression");
    MPoly p = expr();
    skip_space();
    if (pos_ != src_.size()) {
      if (starts_operand()) fail("implicit multiplication is not allowed; use '*'");
      fail(std::string("unexpected '") + src_[pos_] + "'");
    }
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool starts_operand() const {
    if (pos_ >= src_.size()) return false;
    unsigned char c = static_cast<unsigned char>(src_[pos_]);
    return std::isalnum(c) || c == '_' || c == '(';
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly expr() {
    MPoly acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MPoly term() {
    MPoly acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }

  MPoly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  MPoly power() {
    MPoly base = atom();
    if (!accept('^')) return base;
    skip_space();
    std::size_t at = pos_;
    std::string digits = integer_literal();
    if (digits.empty()) fail("exponent must be a non-negative integer");
    if (digits.size() > 4 || std::stoul(digits) > 4096) {
      pos_ = at;
      fail("exponent too large");
    }
    return pow(base, static_cast<unsigned>(std::stoul(digits)));
  }

  std::string integer_literal() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  MPoly atom() {
    skip_space();
    if (pos_ == src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text = integer_literal();
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == '/') {
        ++pos_;
        skip_space();
        std::size_t at = pos_;
        std::string den = integer_literal();
        if (den.empty()) fail("expected an integer denominator");
        if (den.find_first_not_of('0') == std::string::npos) {
          pos_ = at;
          fail("zero denominator");
        }
        text += "/" + den;
      }
      return MPoly::constant(vars_, parse_rat(text));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string name(src_.substr(start, pos_ - start));
      for (const auto& v : vars_)
        if (v == name) return MPoly::variable(vars_, name);
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    if (c == '(') {
      ++pos_;
      MPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `src` as a polynomial over `vars` (geometric variables first, then parameters).
inline MPoly parse_poly(std::string_view src, const std::vector<std::string>& vars) {
  return detail::PolyParser(src, vars).run();
}

inline MPoly parse_poly(std::string_view src, const std::vector<std::string>& geometric,
                        const std::vector<std::string>& params) {
  std::vector<std::string> vars = geometric;
  for (const auto& t : params) {
    for (const auto& g : geometric)
      if (g == t) throw InputError("parameter '" + t + "' clashes with a geometric variable");
    vars.push_back(t);
  }
  return parse_poly(src, vars);
}

}  // namespace zeq

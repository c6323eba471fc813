#pragma once

// Recursive-descent parser for + - * / ^ ( ) expressions over integers and
// identifiers. The element type and atom resolution are supplied by a context:
//
//   T ctx.integer(const mpz_class&)
//   T ctx.atom(const std::string& name, std::size_t pos)
//   T ctx.divide(const T&, const T&)
//   T ctx.power(const T&, long)

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "outaut/errors.hpp"
#include "outaut/scalar.hpp"

namespace outaut {

template <class T, class Ctx>
class ExprParser {
 public:
  ExprParser(const std::string& text, Ctx& ctx) : s_(text), ctx_(ctx) {}

  T parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    T v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  T expr() {
    T v = term();
    for (;;) {
      if (accept('+')) v = v + term();
      else if (accept('-')) v = v - term();
      else return v;
    }
  }
  T term() {
    T v = unary();
    for (;;) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        T d = unary();
        try {
          v = ctx_.divide(v, d);
        } catch (const DivisionByZero&) {
          throw ParseError("division by zero", at);
        }
      } else {
        return v;
      }
    }
  }
  T unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  T power() {
    T base = primary();
    if (accept('^')) {
      skip();
      bool neg = false;
      if (accept('-')) neg = true;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected integer exponent", pos_);
      long e = std::stol(s_.substr(start, pos_ - start));
      try {
        return ctx_.power(base, neg ? -e : e);
      } catch (const DivisionByZero&) {
        throw ParseError("division by zero", start);
      }
    }
    return base;
  }
  T primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      T v = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ctx_.integer(mpz_class(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return ctx_.atom(s_.substr(start, pos_ - start), start);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  const std::string& s_;
  Ctx& ctx_;
  std::size_t pos_ = 0;
};

namespace parse_detail {

struct ScalarContext {
  TowerPtr tower;
  Scalar integer(const mpz_class& v) const { return Scalar(tower, Coeff(v)); }
  Scalar atom(const std::string& name, std::size_t pos) const {
    if (name == "i" || name == "I") {
      if (tower->base() != Base::GaussianRationals) throw ParseError("imaginary unit outside Q(i)", pos);
      return Scalar::imag_unit(tower);
    }
    int idx = tower->index_of(name);
    if (idx < 0) throw ParseError("unknown identifier '" + name + "'", pos);
    return Scalar::var(tower, static_cast<std::size_t>(idx));
  }
  Scalar divide(const Scalar& a, const Scalar& b) const { return a / b; }
  Scalar power(const Scalar& a, long e) const { return a.pow(e); }
};

}  // namespace parse_detail

inline Scalar parse_scalar(const TowerPtr& tower, const std::string& text) {
  parse_detail::ScalarContext ctx{tower};
  return ExprParser<Scalar, parse_detail::ScalarContext>(text, ctx).parse();
}

}  // namespace outaut

#include "lbc/cli/parse_expr.hpp"

#include <cctype>

#include "lbc/errors.hpp"

namespace lbc::cli {

namespace {

class Parser {
 public:
  Parser(std::string_view s, const std::set<std::string>& vars) : s_(s), vars_(vars) {}

  Expr parse() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    Expr e = sum();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
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

  Expr sum() {
    Expr e = product();
    for (;;) {
      if (accept('+'))
        e += product();
      else if (accept('-'))
        e -= product();
      else
        return e;
    }
  }

  Expr product() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) {
        e *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        if (d.is_constant()) {
          e *= Expr(Rational(1) / d.constant_value());
        } else {
          try {
            e *= pow(d, -1);
          } catch (const NonLaurent&) {
            throw ParseError("division by a non-monomial expression", at);
          }
        }
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) {
      skip();
      std::size_t at = pos_;
      bool neg = false;
      if (accept('-'))
        neg = true;
      else
        accept('+');
      skip();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("expected an integer exponent", pos_);
      long k = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        k = k * 10 + (s_[pos_++] - '0');
        if (k > 1000) throw ParseError("exponent too large", at);
      }
      try {
        return pow(base, static_cast<int>(neg ? -k : k));
      } catch (const Error& e) {
        throw ParseError(e.what(), at);
      }
    }
    return base;
  }

  Expr atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '.') throw ParseError("floating-point literals are not supported", pos_);
      return Expr(Rational(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      skip();
      if (pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        Expr arg = sum();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        if (name == "sin") return sin(arg);
        if (name == "cos") return cos(arg);
        if (name == "exp") return exp(arg);
        throw ParseError("unknown function '" + name + "'", start);
      }
      if (!vars_.empty() && !vars_.count(name)) throw ParseError("undeclared variable '" + name + "'", start);
      return Expr::var(name);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view s_;
  const std::set<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const std::set<std::string>& vars) { return Parser(text, vars).parse(); }

}  // namespace lbc::cli

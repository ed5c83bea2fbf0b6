#include "ermakov/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ermakov/errors.hpp"

namespace ermakov {

namespace {

class Parser {
 public:
  Parser(std::string_view text, SymbolTable& table, const ParseOptions& opts)
      : text_(text), table_(table), opts_(opts) {}

  Expr run() {
    Expr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr parse_sum() {
    Expr e = parse_term();
    for (;;) {
      if (eat('+')) {
        e = e + parse_term();
      } else if (eat('-')) {
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_unary();
    for (;;) {
      if (eat('*')) {
        e = e * parse_unary();
      } else if (eat('/')) {
        e = e / parse_unary();
      } else {
        return e;
      }
    }
  }

  Expr parse_unary() {
    if (eat('-')) return -parse_unary();
    if (eat('+')) return parse_unary();
    return parse_postfix();
  }

  Expr parse_postfix() {
    Expr e = parse_primary();
    while (eat('^')) e = pow(e, parse_exponent());
    return e;
  }

  Rational parse_exponent() {
    skip_ws();
    if (eat('(')) {
      Rational r = parse_signed_rational();
      if (!eat(')')) fail("expected ')' after exponent");
      return r;
    }
    return parse_signed_rational();
  }

  Rational parse_signed_rational() {
    skip_ws();
    bool neg = false;
    if (eat('-')) neg = true;
    std::int64_t num = parse_integer();
    std::int64_t den = 1;
    if (eat('/')) den = parse_integer();
    if (den == 0) fail("zero denominator in exponent");
    return Rational(neg ? -num : num, den);
  }

  std::int64_t parse_integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer exponent (symbolic exponents are not supported)");
    return std::strtoll(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr, 10);
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    if (eat('(')) {
      Expr e = parse_sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr parse_number() {
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return Expr::constant(v);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "pi") return Expr::constant(M_PI);
    if (name == "sin" || name == "cos") {
      if (!eat('(')) fail("expected '(' after " + name);
      Expr arg = parse_sum();
      if (!eat(')')) fail("expected ')' closing " + name);
      return name == "sin" ? sin(arg) : cos(arg);
    }
    if (auto s = table_.find(name)) return Expr(*s);
    if (opts_.auto_parameters) return Expr(table_.parameter(name));
    pos_ = start;
    fail("unknown symbol '" + name + "'");
  }

  std::string_view text_;
  SymbolTable& table_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text, SymbolTable& table, const ParseOptions& opts) {
  return Parser(text, table, opts).run();
}

}  // namespace ermakov

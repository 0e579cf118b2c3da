// Recursive-descent parser for the scalar-field DSL.
//
//   expr    := term (("+"|"-") term)*
//   term    := factor (("*"|"/") factor)*
//   factor  := "-" factor | power
//   power   := primary ("^" factor)?
//   primary := NUMBER | "x1" | "x2" | "x3" | FUNC "(" expr ")" | NAME "(" xk ")" | "(" expr ")"
//
// Unary minus applies to a whole power: "-x1^2" is -(x1^2); "^" is right-associative.
#include <cctype>
#include <charconv>

#include "diagkill/errors.hpp"
#include "diagkill/expr.hpp"

namespace diagkill::expr {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& symbols) : text_(text), symbols_(symbols) {}

  ScalarField run() {
    auto e = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("operator or end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(pos_, expected, std::string(text_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }

  ScalarField expression() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  ScalarField term() {
    auto lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * factor();
      } else if (accept('/')) {
        lhs = lhs / factor();
      } else {
        return lhs;
      }
    }
  }

  ScalarField factor() {
    if (accept('-')) return -factor();
    return power();
  }

  ScalarField power() {
    auto base = primary();
    if (accept('^')) return pow(base, factor());
    return base;
  }

  ScalarField primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("number, variable, function or '('");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("number, variable, function or '('");
  }

  ScalarField number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) fail("digits");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("exponent digits");
    }
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc{} || res.ptr != text_.data() + pos_) {
      pos_ = start;
      fail("decimal literal");
    }
    return ScalarField::constant(v);
  }

  std::string_view name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  ScalarField identifier() {
    const std::size_t start = pos_;
    const auto id = name();
    if (id == "x1") return x1();
    if (id == "x2") return x2();
    if (id == "x3") return x3();

    using Builder = ScalarField (*)(const ScalarField&);
    Builder builder = nullptr;
    if (id == "exp") builder = &exp;
    if (id == "ln") builder = &ln;
    if (id == "sin") builder = &sin;
    if (id == "cos") builder = &cos;
    if (id == "sqrt") builder = &sqrt;
    if (builder) {
      expect('(');
      auto arg = expression();
      expect(')');
      return builder(arg);
    }

    const auto it = symbols_.find(id);
    if (it == symbols_.end()) throw UnknownIdentifier(std::string(id), start);
    expect('(');
    skip_ws();
    const std::size_t arg_pos = pos_;
    const auto var = name();
    const auto& fn = it->second;
    if (var != axis_name(fn->axis())) {
      pos_ = arg_pos;
      fail("variable " + axis_name(fn->axis()) + " as the argument of " + std::string(id));
    }
    expect(')');
    return ScalarField::univariate(fn);
  }

  std::string_view text_;
  const SymbolTable& symbols_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarField parse(std::string_view text, const SymbolTable& symbols) {
  return Parser(text, symbols).run();
}

}  // namespace diagkill::expr

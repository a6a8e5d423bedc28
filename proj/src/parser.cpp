#include <cctype>
#include <limits>
#include <sstream>

#include "ivt/expr.hpp"

namespace ivt {

namespace {

std::string describe(const std::vector<std::string>& expected) {
  std::ostringstream out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i != 0) out << ", ";
    out << expected[i];
  }
  return out.str();
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& found)
    : Error("parse error at offset " + std::to_string(offset) +
            ": expected one of {" + describe(expected) + "}, found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

const std::vector<std::string> kAtomStart = {"x", "number", "(", "min", "max",
                                             "abs"};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)); }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FunctionExpr parse_all() {
    FunctionExpr e = parse_expr();
    skip_ws();
    if (!at_end()) fail({"+", "-", "*", "/", "^", "end of input"});
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    fail_at(pos_, std::move(expected));
  }

  [[noreturn]] void fail_at(std::size_t at,
                            std::vector<std::string> expected) const {
    const std::string found =
        at >= text_.size() ? "end of input"
                           : "'" + std::string(1, text_[at]) + "'";
    throw ParseError(at, std::move(expected), found);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail({std::string(1, c)});
    ++pos_;
  }

  bool starts_atom() const {
    const char c = peek();
    return is_digit(c) || c == '.' || c == '(' || is_alpha(c);
  }

  FunctionExpr parse_expr() {
    FunctionExpr lhs = parse_term();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      FunctionExpr rhs = parse_term();
      lhs = c == '+' ? FunctionExpr::add(std::move(lhs), std::move(rhs))
                     : FunctionExpr::sub(std::move(lhs), std::move(rhs));
    }
  }

  FunctionExpr parse_term() {
    FunctionExpr lhs = parse_factor();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        FunctionExpr rhs = parse_factor();
        lhs = c == '*' ? FunctionExpr::mul(std::move(lhs), std::move(rhs))
                       : FunctionExpr::div(std::move(lhs), std::move(rhs));
      } else if (starts_atom()) {
        // Juxtaposition: "6x^2" is 6*x^2.
        lhs = FunctionExpr::mul(std::move(lhs), parse_factor());
      } else {
        return lhs;
      }
    }
  }

  FunctionExpr parse_factor() {
    skip_ws();
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
      skip_ws();
    }
    if (at_end() || !starts_atom()) {
      auto expected = kAtomStart;
      if (!negate) expected.push_back("-");
      fail(std::move(expected));
    }
    bool bare_literal = false;
    FunctionExpr atom = parse_atom(bare_literal);
    bool raised = false;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      atom = FunctionExpr::pow(std::move(atom), parse_exponent());
      raised = true;
    }
    if (!negate) return atom;
    if (bare_literal && !raised) return FunctionExpr::constant(-atom.value());
    return FunctionExpr::neg(std::move(atom));
  }

  unsigned parse_exponent() {
    const std::size_t start = pos_;
    if (!is_digit(peek())) fail({"non-negative integer"});
    unsigned long long v = 0;
    while (is_digit(peek())) {
      v = v * 10 + static_cast<unsigned>(peek() - '0');
      if (v > std::numeric_limits<unsigned>::max()) {
        fail_at(start, {"exponent that fits in 32 bits"});
      }
      ++pos_;
    }
    return static_cast<unsigned>(v);
  }

  FunctionExpr parse_atom(bool& bare_literal) {
    skip_ws();
    const char c = peek();
    if (is_digit(c) || c == '.') {
      bare_literal = true;
      return parse_literal();
    }
    if (c == '(') {
      ++pos_;
      FunctionExpr inner = parse_expr();
      expect(')');
      return inner;
    }
    const std::size_t start = pos_;
    while (is_alpha(peek())) ++pos_;
    const std::string_view ident = text_.substr(start, pos_ - start);
    if (ident == "x") return FunctionExpr::var();
    if (ident == "min" || ident == "max") {
      expect('(');
      FunctionExpr l = parse_expr();
      expect(',');
      FunctionExpr r = parse_expr();
      expect(')');
      return ident == "min" ? FunctionExpr::min(std::move(l), std::move(r))
                            : FunctionExpr::max(std::move(l), std::move(r));
    }
    if (ident == "abs") {
      expect('(');
      FunctionExpr inner = parse_expr();
      expect(')');
      return FunctionExpr::abs(std::move(inner));
    }
    fail_at(start, kAtomStart);
  }

  FunctionExpr parse_literal() {
    const std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    if (peek() == '.') {
      ++pos_;
      if (!is_digit(peek())) fail({"digit"});
      while (is_digit(peek())) ++pos_;
      return FunctionExpr::constant(
          Rational::parse(text_.substr(start, pos_ - start)));
    }
    const std::size_t int_end = pos_;
    if (peek() == '/' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1])) {
      ++pos_;
      const std::size_t den_start = pos_;
      while (is_digit(peek())) ++pos_;
      const BigInt den(std::string(text_.substr(den_start, pos_ - den_start)), 10);
      if (den == 0) fail_at(den_start, {"positive integer"});
      const BigInt num(std::string(text_.substr(start, int_end - start)), 10);
      return FunctionExpr::constant(Rational::from_parts(num, den));
    }
    return FunctionExpr::constant(
        Rational(BigInt(std::string(text_.substr(start, int_end - start)), 10)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FunctionExpr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace ivt

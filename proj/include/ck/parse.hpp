#pragma once

#include <cctype>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ck/scalar.hpp"

namespace ck {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

struct Token {
  enum class Kind { Number, Ident, Op, End } kind;
  std::string text;
};

// Accepts ASCII operators plus the typographic minus sign and middle dot.
inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::Number, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Token::Kind::Ident, std::string(s.substr(i, j - i))});
      i = j;
    } else if (s.substr(i, 3) == "\xE2\x88\x92") {
      out.push_back({Token::Kind::Op, "-"});
      i += 3;
    } else if (s.substr(i, 2) == "\xC2\xB7") {
      out.push_back({Token::Kind::Op, "*"});
      i += 2;
    } else if (std::string_view("+-*/^()").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Token::Kind::Op, std::string(1, static_cast<char>(c))});
      ++i;
    } else {
      throw ParseError("unexpected character '" + std::string(1, static_cast<char>(c)) + "' in \"" + std::string(s) + "\"");
    }
  }
  out.push_back({Token::Kind::End, ""});
  return out;
}

}  // namespace detail

/// Arithmetic hooks for parse_expression. Specialize for each value type.
template <typename T>
struct ExprTraits;

template <>
struct ExprTraits<Scalar> {
  static Scalar from_rational(const Rational& r) { return Scalar(r); }
  static Scalar divide(const Scalar& a, const Scalar& b) { return a / b; }
  static Scalar power(const Scalar& a, int n) { return a.pow(n); }
};

/// Recursive-descent parser for + - * / ^, parentheses, integer literals and
/// identifiers. Juxtaposition is multiplication ("2 w1 H^2" == "2*w1*H^2"),
/// which is non-commutative for value types that are. `resolve` maps an
/// identifier to a value. `traits` supplies constants, division and powers.
template <typename T, typename Resolve, typename Traits = ExprTraits<T>>
T parse_expression(std::string_view text, Resolve&& resolve, const Traits& traits = Traits{}) {
  using detail::Token;
  const std::vector<Token> toks = detail::tokenize(text);
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(msg + " in \"" + std::string(text) + "\"");
  };
  auto peek_op = [&](const char* op) { return toks[pos].kind == Token::Kind::Op && toks[pos].text == op; };
  auto starts_atom = [&] {
    return toks[pos].kind == Token::Kind::Number || toks[pos].kind == Token::Kind::Ident || peek_op("(");
  };

  // The lambdas recurse through this holder.
  struct Parser {
    std::function<T()> expr, term, factor, primary;
  } p;

  p.primary = [&]() -> T {
    const Token& t = toks[pos];
    if (t.kind == Token::Kind::Number) {
      ++pos;
      return traits.from_rational(Rational::parse(t.text));
    }
    if (t.kind == Token::Kind::Ident) {
      ++pos;
      return resolve(t.text);
    }
    if (peek_op("(")) {
      ++pos;
      T v = p.expr();
      if (!peek_op(")")) throw fail("missing ')'");
      ++pos;
      return v;
    }
    throw fail("unexpected token '" + t.text + "'");
  };

  p.factor = [&]() -> T {
    if (peek_op("-")) {
      ++pos;
      return traits.from_rational(Rational(-1)) * p.factor();
    }
    if (peek_op("+")) {
      ++pos;
      return p.factor();
    }
    T base = p.primary();
    if (peek_op("^")) {
      ++pos;
      bool negative = false;
      if (peek_op("-")) {
        negative = true;
        ++pos;
      }
      if (toks[pos].kind != Token::Kind::Number) throw fail("exponent must be an integer");
      int n = std::stoi(toks[pos].text);
      ++pos;
      return traits.power(base, negative ? -n : n);
    }
    return base;
  };

  p.term = [&]() -> T {
    T v = p.factor();
    for (;;) {
      if (peek_op("*")) {
        ++pos;
        v = v * p.factor();
      } else if (peek_op("/")) {
        ++pos;
        v = traits.divide(v, p.factor());
      } else if (starts_atom()) {
        v = v * p.factor();
      } else {
        return v;
      }
    }
  };

  p.expr = [&]() -> T {
    T v = p.term();
    for (;;) {
      if (peek_op("+")) {
        ++pos;
        v = v + p.term();
      } else if (peek_op("-")) {
        ++pos;
        v = v - p.term();
      } else {
        return v;
      }
    }
  };

  if (toks.front().kind == Token::Kind::End) throw fail("empty expression");
  T result = p.expr();
  if (toks[pos].kind != Token::Kind::End) throw fail("trailing input '" + toks[pos].text + "'");
  return result;
}

/// Parses a polynomial-fraction string such as "(-w1)/(4*w2*c1)".
inline Scalar parse_scalar(std::string_view text) {
  return parse_expression<Scalar>(text, [](const std::string& name) { return Scalar::symbol(name); });
}

}  // namespace ck

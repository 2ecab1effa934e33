#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cmkernel/errors.hpp"
#include "cmkernel/polynomial.hpp"
#include "cmkernel/ring.hpp"

namespace cmkernel {

namespace detail {

/// Recursive-descent parser for the polynomial grammar
///
///   expr    := term (('+' | '-') term)*
///   term    := factor ('*' factor)*
///   factor  := ('-' | '+') factor | power
///   power   := primary ('^' INTEGER)?
///   primary := INTEGER ('/' INTEGER)? | IDENT | '(' expr ')'
///
/// Juxtaposition is rejected; `^` binds tighter than unary minus, which
/// binds tighter than `*`.
class PolyParser {
 public:
  PolyParser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty polynomial expression");
    Polynomial p = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Polynomial factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      char c = peek();
      if (c == '-') fail("negative exponent");
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("exponent must be a nonnegative integer");
      mpz_class e = integer();
      if (peek() == '.' || peek() == '/') fail("exponent must be a nonnegative integer");
      if (peek() == '^') fail("chained exponents need parentheses");
      if (e > 100000) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    reject_juxtaposition();
    return base;
  }

  void reject_juxtaposition() {
    char c = peek();
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_')
      fail("missing '*' (implicit multiplication is not allowed)");
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      if (peek() == '.') fail("decimal literals are not supported");
      mpz_class den = 1;
      if (accept('/')) {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer denominator");
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      Scalar q(num, den);
      q.canonicalize();
      return Polynomial::constant(ring_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      const auto& vars = ring_->variables;
      auto it = std::find(vars.begin(), vars.end(), name);
      if (it == vars.end()) fail("unknown variable '" + name + "'");
      return Polynomial::variable(ring_, static_cast<std::size_t>(it - vars.begin()));
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Splits on commas that are not nested inside parentheses or brackets.
inline std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') --depth;
    else if (c == ',' && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const Ring& ring) {
  return detail::PolyParser(text, ring).parse();
}

/// Comma-separated polynomials, optionally wrapped as `ideal(...)`.
inline std::vector<Polynomial> parse_polynomial_list(std::string_view text, const Ring& ring) {
  std::string s = detail::trim(text);
  if (s.rfind("ideal(", 0) == 0) {
    if (s.back() != ')') throw ParseError("unterminated ideal(...)");
    s = s.substr(6, s.size() - 7);
  }
  if (detail::trim(s).empty()) throw ParseError("empty polynomial list");
  std::vector<Polynomial> out;
  for (const auto& part : detail::split_top_level(s)) out.push_back(parse_polynomial(part, ring));
  return out;
}

/// `QQ[x,y,z]` or `Fp(32003)[x,y]`.
inline Ring parse_ring(std::string_view text) {
  std::string s = detail::trim(text);
  auto open = s.find('[');
  if (open == std::string::npos || s.back() != ']') throw ParseError("ring must look like QQ[x,y] or Fp(p)[x,y]");
  std::string head = detail::trim(s.substr(0, open));
  CoefficientField field = CoefficientField::rationals();
  if (head == "QQ") {
  } else if (head.rfind("Fp(", 0) == 0 && head.back() == ')') {
    std::string digits = head.substr(3, head.size() - 4);
    if (digits.empty() || digits.size() > 10 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("bad prime field modulus '" + digits + "'");
    std::uint64_t p = std::stoull(digits);
    if (p >= (1ull << 31)) throw ParseError("prime field modulus must be below 2^31");
    try {
      field = CoefficientField::prime_field(static_cast<std::uint32_t>(p));
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  } else {
    throw ParseError("unknown coefficient field '" + head + "'");
  }
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  std::vector<std::string> vars;
  if (!detail::trim(inner).empty()) vars = detail::split_top_level(inner);
  try {
    return make_ring(std::move(vars), field);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace cmkernel

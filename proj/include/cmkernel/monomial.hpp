#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "cmkernel/errors.hpp"

namespace cmkernel {

/// Exponent vector. Length is fixed by the owning ring.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t arity, std::size_t index, std::uint32_t power = 1) {
    Monomial m(arity);
    m.exps_[index] = power;
    return m;
  }

  std::size_t arity() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint64_t degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
  }

  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  /// Requires divides(other) to hold; other / *this.
  Monomial quotient_of(const Monomial& other) const {
    Monomial q(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] = other.exps_[i] - exps_[i];
    return q;
  }

  Monomial lcm(const Monomial& other) const {
    Monomial r(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], other.exps_[i]);
    return r;
  }

  bool coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] && other.exps_[i]) return false;
    return true;
  }

  Monomial pow(std::uint32_t n) const {
    Monomial r(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i] * n;
    return r;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.exps_.size());
    for (std::size_t i = 0; i < a.exps_.size(); ++i) r.exps_[i] = a.exps_[i] + b.exps_[i];
    return r;
  }

  /// Structural order used for canonical storage. Not a term order.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Term orders: pure lex, graded reverse lex, and block orders made of
/// graded-reverse-lex blocks. Variables are compared in ring order.
class MonomialOrder {
 public:
  enum class Kind { Lex, GrevLex, Block };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::GrevLex, {}); }

  /// Leading blocks of the given sizes; remaining variables form the last
  /// block. Each block is graded reverse lex.
  static MonomialOrder block(std::vector<std::size_t> sizes) {
    if (sizes.empty()) throw DomainError("block order needs at least one block");
    for (auto s : sizes)
      if (s == 0) throw DomainError("block sizes must be positive");
    return MonomialOrder(Kind::Block, std::move(sizes));
  }

  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& blocks() const { return splits_; }

  /// Three-way comparison of a and b under this order.
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::Lex:
        return lex_range(a, b, 0, a.arity());
      case Kind::GrevLex:
        return grevlex_range(a, b, 0, a.arity());
      case Kind::Block: {
        std::size_t begin = 0;
        for (auto size : splits_) {
          std::size_t end = std::min(begin + size, a.arity());
          auto c = grevlex_range(a, b, begin, end);
          if (c != 0) return c;
          begin = end;
        }
        return grevlex_range(a, b, begin, a.arity());
      }
    }
    return std::strong_ordering::equal;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  std::string name() const {
    switch (kind_) {
      case Kind::Lex: return "lex";
      case Kind::GrevLex: return "grevlex";
      case Kind::Block: {
        std::string s = "block(";
        for (std::size_t i = 0; i < splits_.size(); ++i) s += (i ? "," : "") + std::to_string(splits_[i]);
        return s + ")";
      }
    }
    return "?";
  }

  friend auto operator<=>(const MonomialOrder&, const MonomialOrder&) = default;
  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind k, std::vector<std::size_t> s) : kind_(k), splits_(std::move(s)) {}

  static std::strong_ordering lex_range(const Monomial& a, const Monomial& b, std::size_t lo,
                                        std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      if (a[i] != b[i]) return a[i] <=> b[i];
    return std::strong_ordering::equal;
  }

  static std::strong_ordering grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo,
                                            std::size_t hi) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da <=> db;
    for (std::size_t i = hi; i-- > lo;)
      if (a[i] != b[i]) return b[i] <=> a[i];
    return std::strong_ordering::equal;
  }

  Kind kind_;
  std::vector<std::size_t> splits_;
};

}  // namespace cmkernel

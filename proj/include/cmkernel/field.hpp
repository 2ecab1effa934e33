#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "cmkernel/errors.hpp"

namespace cmkernel {

/// Field elements are carried as GMP rationals. Over a prime field the
/// value is always an integer in [0, p).
using Scalar = mpq_class;

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// The coefficient field k: either QQ or F_p with p < 2^31.
class CoefficientField {
 public:
  enum class Kind { Rationals, PrimeField };

  static CoefficientField rationals() { return CoefficientField(Kind::Rationals, 0); }

  static CoefficientField prime_field(std::uint32_t p) {
    if (p >= (1u << 31) || !detail::is_prime_u32(p))
      throw DomainError("prime field modulus must be a prime below 2^31, got " + std::to_string(p));
    return CoefficientField(Kind::PrimeField, p);
  }

  Kind kind() const { return kind_; }
  std::uint32_t modulus() const { return p_; }
  bool is_rational() const { return kind_ == Kind::Rationals; }

  bool operator==(const CoefficientField&) const = default;

  /// Brings an arbitrary rational into canonical form for this field.
  Scalar reduce(const Scalar& a) const {
    if (is_rational()) {
      Scalar r = a;
      r.canonicalize();
      return r;
    }
    mpz_class num = a.get_num() % p_;
    if (num < 0) num += p_;
    mpz_class den = a.get_den() % p_;
    if (den == 0) throw DomainError("denominator vanishes modulo " + std::to_string(p_));
    mpz_class den_inv;
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p_).get_mpz_t());
    mpz_class r = (num * den_inv) % p_;
    return Scalar(r);
  }

  Scalar add(const Scalar& a, const Scalar& b) const {
    if (is_rational()) return a + b;
    mpz_class r = a.get_num() + b.get_num();
    if (r >= p_) r -= p_;
    return Scalar(r);
  }

  Scalar sub(const Scalar& a, const Scalar& b) const {
    if (is_rational()) return a - b;
    mpz_class r = a.get_num() - b.get_num();
    if (r < 0) r += p_;
    return Scalar(r);
  }

  Scalar neg(const Scalar& a) const {
    if (is_rational()) return -a;
    if (a == 0) return a;
    return Scalar(mpz_class(p_) - a.get_num());
  }

  Scalar mul(const Scalar& a, const Scalar& b) const {
    if (is_rational()) return a * b;
    return Scalar(mpz_class((a.get_num() * b.get_num()) % p_));
  }

  Scalar inv(const Scalar& a) const {
    if (a == 0) throw DomainError("inverse of zero");
    if (is_rational()) return 1 / a;
    mpz_class r;
    mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), mpz_class(p_).get_mpz_t());
    return Scalar(r);
  }

  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  /// Representative used for printing: over F_p the symmetric residue.
  Scalar printable(const Scalar& a) const {
    if (is_rational()) return a;
    mpz_class v = a.get_num();
    if (v > p_ / 2) v -= p_;
    return Scalar(v);
  }

  std::string name() const {
    return is_rational() ? std::string("QQ") : "Fp(" + std::to_string(p_) + ")";
  }

 private:
  CoefficientField(Kind k, std::uint32_t p) : kind_(k), p_(p) {}

  Kind kind_;
  std::uint32_t p_;
};

}  // namespace cmkernel

#pragma once

#include <stdexcept>
#include <string>

namespace cmkernel {

/// Base class for every error raised by the kernel.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different polynomial rings.
class RingMismatch : public Error {
 public:
  RingMismatch() : Error("polynomials belong to different rings") {}
};

/// An operation that needs a nonzero polynomial was handed zero.
class ZeroPolynomial : public Error {
 public:
  explicit ZeroPolynomial(const std::string& what) : Error(what + ": zero polynomial") {}
};

/// An operation that needs a proper ideal was handed the unit ideal.
class UnitIdeal : public Error {
 public:
  explicit UnitIdeal(const std::string& what) : Error(what + ": unit ideal") {}
};

/// Malformed text input (polynomials, rings, descriptors).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Inputs that violate a documented precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace cmkernel

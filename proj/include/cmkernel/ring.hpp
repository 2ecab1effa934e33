#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "cmkernel/errors.hpp"
#include "cmkernel/field.hpp"

namespace cmkernel {

/// Polynomial ring k[x_1..x_n]: ordered variable names plus the field.
struct RingDescriptor {
  std::vector<std::string> variables;
  CoefficientField field = CoefficientField::rationals();

  std::size_t arity() const { return variables.size(); }

  bool operator==(const RingDescriptor&) const = default;

  std::string to_string() const {
    std::string s = field.name() + "[";
    for (std::size_t i = 0; i < variables.size(); ++i) {
      if (i) s += ",";
      s += variables[i];
    }
    return s + "]";
  }
};

inline bool is_valid_variable_name(const std::string& name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name[0])) return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

/// Shared immutable handle to a ring. Polynomials carry one of these.
using Ring = std::shared_ptr<const RingDescriptor>;

inline Ring make_ring(std::vector<std::string> variables,
                      CoefficientField field = CoefficientField::rationals()) {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (!is_valid_variable_name(variables[i]))
      throw DomainError("invalid variable name '" + variables[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (variables[i] == variables[j])
        throw DomainError("duplicate variable name '" + variables[i] + "'");
  }
  return std::make_shared<const RingDescriptor>(RingDescriptor{std::move(variables), field});
}

inline bool same_ring(const Ring& a, const Ring& b) { return a == b || *a == *b; }

/// Ring with `count` fresh variables prepended. Names follow t_0, t_1, ...
/// skipping any that collide with existing variables.
inline Ring extend_ring(const Ring& base, std::size_t count) {
  std::vector<std::string> fresh;
  for (std::size_t k = 0; fresh.size() < count; ++k) {
    std::string name = "t_" + std::to_string(k);
    if (std::find(base->variables.begin(), base->variables.end(), name) == base->variables.end())
      fresh.push_back(name);
  }
  fresh.insert(fresh.end(), base->variables.begin(), base->variables.end());
  return make_ring(std::move(fresh), base->field);
}

}  // namespace cmkernel

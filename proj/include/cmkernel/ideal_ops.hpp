#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cmkernel/errors.hpp"
#include "cmkernel/groebner.hpp"
#include "cmkernel/polynomial.hpp"

namespace cmkernel {

struct MembershipResult {
  bool member;
  ReductionTrace trace;
};

/// h in I iff its normal form modulo the reduced basis vanishes.
inline MembershipResult ideal_membership(const Polynomial& h, const IdealHandle& ideal) {
  auto trace = normal_form(h, ideal);
  bool member = trace.remainder.is_zero();
  return {member, std::move(trace)};
}

/// Every generator of `inner` lies in `outer`.
inline bool ideal_contains(const IdealHandle& outer, const IdealHandle& inner) {
  for (const auto& g : inner.generators())
    if (!ideal_membership(g, outer).member) return false;
  return true;
}

inline bool ideals_equal(const IdealHandle& a, const IdealHandle& b) {
  return a.groebner_basis() == b.groebner_basis();
}

struct RadicalMembershipResult {
  bool member;
  /// Ideal I + (1 - t*h) in the ring with one fresh variable t prepended.
  IdealHandle extended;
  /// Division of 1 by the reduced basis of `extended`.
  ReductionTrace trace;
};

/// h in sqrt(I), decided by 1 in I + (1 - t*h) over k[t, x].
inline RadicalMembershipResult radical_membership(const Polynomial& h, const IdealHandle& ideal) {
  Polynomial::check_same(h, ideal.generators().front());
  Ring ext = extend_ring(ideal.ring(), 1);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(embed(g, ext, 1));
  Polynomial t = Polynomial::variable(ext, 0);
  gens.push_back(Polynomial::one(ext) - t * embed(h, ext, 1));
  IdealHandle extended(ext, std::move(gens));
  auto trace = normal_form(Polynomial::one(ext), extended);
  bool member = trace.remainder.is_zero();
  return {member, std::move(extended), std::move(trace)};
}

namespace detail {

/// Generators of (gens) ∩ k[x], where gens live in k[t_0..t_{shift-1}, x];
/// the result is the reduced basis under grevlex of the elimination ideal.
inline std::vector<Polynomial> eliminate_fresh(const std::vector<Polynomial>& gens, const Ring& base,
                                               std::size_t shift) {
  auto basis = buchberger(gens, MonomialOrder::block({shift}));
  std::vector<Polynomial> out;
  for (const auto& g : basis)
    if (auto r = restrict_to(g, base, shift)) out.push_back(std::move(*r));
  std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
    auto order = MonomialOrder::grevlex();
    return order.less(b.leading_term(order).monomial, a.leading_term(order).monomial);
  });
  return out;
}

inline IdealHandle handle_from_basis(const Ring& ring, std::vector<Polynomial> basis) {
  if (basis.empty()) basis.push_back(Polynomial(ring));
  std::vector<Polynomial> gb;
  for (const auto& b : basis)
    if (!b.is_zero()) gb.push_back(b);
  IdealHandle handle(ring, std::move(basis));
  handle.seed_basis(MonomialOrder::grevlex(), std::move(gb));
  return handle;
}

}  // namespace detail

/// I ∩ J via t*I + (1 - t)*J eliminated over k[t, x].
inline IdealHandle ideal_intersection(const IdealHandle& I, const IdealHandle& J) {
  if (!same_ring(I.ring(), J.ring())) throw RingMismatch();
  const Ring& base = I.ring();
  if (I.is_zero() || J.is_zero()) return IdealHandle(base, {Polynomial(base)});
  Ring ext = extend_ring(base, 1);
  Polynomial t = Polynomial::variable(ext, 0);
  Polynomial one_minus_t = Polynomial::one(ext) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators())
    if (!g.is_zero()) gens.push_back(t * embed(g, ext, 1));
  for (const auto& g : J.generators())
    if (!g.is_zero()) gens.push_back(one_minus_t * embed(g, ext, 1));
  return detail::handle_from_basis(base, detail::eliminate_fresh(gens, base, 1));
}

/// (I : h) = {r : r*h in I}, computed as (I ∩ (h)) / h.
inline IdealHandle colon_ideal(const IdealHandle& I, const Polynomial& h) {
  Polynomial::check_same(h, I.generators().front());
  if (h.is_zero()) throw ZeroPolynomial("colon_ideal");
  const Ring& base = I.ring();
  if (h.is_unit()) return I;
  auto meet = ideal_intersection(I, IdealHandle(base, {h}));
  std::vector<Polynomial> gens;
  for (const auto& g : meet.groebner_basis()) {
    auto q = exact_divide(g, h);
    if (!q) throw Error("colon_ideal: intersection generator not divisible by h");
    gens.push_back(q->monic());
  }
  if (gens.empty()) gens.push_back(Polynomial(base));
  return IdealHandle(base, std::move(gens));
}

/// (I : h^∞) via I + (1 - t*h) eliminated over k[t, x].
inline IdealHandle saturation(const IdealHandle& I, const Polynomial& h) {
  Polynomial::check_same(h, I.generators().front());
  if (h.is_zero()) throw ZeroPolynomial("saturation");
  const Ring& base = I.ring();
  if (h.is_unit() || I.is_zero()) return I;
  Ring ext = extend_ring(base, 1);
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators())
    if (!g.is_zero()) gens.push_back(embed(g, ext, 1));
  gens.push_back(Polynomial::one(ext) - Polynomial::variable(ext, 0) * embed(h, ext, 1));
  return detail::handle_from_basis(base, detail::eliminate_fresh(gens, base, 1));
}

/// Monic gcd, computed as f*g / lcm where (lcm) = (f) ∩ (g).
inline Polynomial multivariate_gcd(const Polynomial& f, const Polynomial& g) {
  Polynomial::check_same(f, g);
  if (f.is_zero() && g.is_zero()) throw ZeroPolynomial("multivariate_gcd of two zeros");
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  if (f.is_unit() || g.is_unit()) return Polynomial::one(f.ring());
  auto meet = ideal_intersection(IdealHandle(f.ring(), {f}), IdealHandle(g.ring(), {g}));
  const auto& basis = meet.groebner_basis();
  if (basis.size() != 1) throw Error("multivariate_gcd: intersection of principal ideals is not principal");
  auto d = exact_divide(f * g, basis.front());
  if (!d) throw Error("multivariate_gcd: lcm does not divide f*g");
  return d->monic();
}

/// Krull dimension of S/I: the largest set of variables containing the
/// support of no leading monomial of the grevlex basis.
inline std::size_t quotient_dimension(const IdealHandle& I) {
  if (I.is_unit()) throw UnitIdeal("quotient_dimension");
  const std::size_t n = I.ring()->arity();
  const auto order = MonomialOrder::grevlex();
  std::vector<std::uint64_t> lead_masks;
  for (const auto& g : I.groebner_basis()) {
    const auto lm = g.leading_term(order).monomial;
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (lm[i]) mask |= std::uint64_t{1} << i;
    lead_masks.push_back(mask);
  }
  if (n >= 63) throw DomainError("quotient_dimension: too many variables");
  std::size_t best = 0;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << n); ++subset) {
    auto size = static_cast<std::size_t>(__builtin_popcountll(subset));
    if (size <= best) continue;
    bool independent = std::none_of(lead_masks.begin(), lead_masks.end(),
                                    [&](std::uint64_t m) { return (m & ~subset) == 0; });
    if (independent) best = size;
  }
  return best;
}

/// Height of I. In the Cohen-Macaulay ring k[x] this equals grade(I).
inline std::size_t height_and_grade(const IdealHandle& I) {
  return I.ring()->arity() - quotient_dimension(I);
}

/// f_1..f_l is a regular sequence on k[x]: each element is a nonzerodivisor
/// modulo the previous ones and the ideal they generate is proper.
inline bool is_regular_sequence(const std::vector<Polynomial>& seq) {
  if (seq.empty()) return true;
  const Ring& ring = seq.front().ring();
  std::vector<Polynomial> prefix;
  for (const auto& f : seq) {
    if (f.is_zero()) return false;
    if (!prefix.empty()) {
      IdealHandle before(ring, prefix);
      if (!ideal_contains(before, colon_ideal(before, f))) return false;
    }
    prefix.push_back(f);
  }
  return !IdealHandle(ring, prefix).is_unit();
}

}  // namespace cmkernel

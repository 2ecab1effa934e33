#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cmkernel/errors.hpp"
#include "cmkernel/groebner.hpp"
#include "cmkernel/ideal_ops.hpp"
#include "cmkernel/polynomial.hpp"

namespace cmkernel {

/// Certificate for H^2_{f,g}(S) = 0: 1 lies in (f', g', 1 - t*d).
struct RadicalTrace {
  IdealHandle extended;
  ReductionTrace trace;
};

/// Certificate for H^2_{f,g}(S) != 0: the saturation (f', g') : d^∞ is a
/// proper ideal of height exactly 2.
struct HeightTwoWitness {
  IdealHandle saturated;
  std::size_t height;
};

/// Outcome of the top Cech cohomology decision for a pair f, g in k[x].
///
/// With d = gcd(f, g) and the reduced pair f' = f/d, g' = g/d, the module
/// vanishes exactly when d lies in the radical of (f', g'). Otherwise the
/// reduced pair is coprime, no height-one prime contains it, and after
/// inverting d it still generates a proper ideal of height two.
struct H2Verdict {
  bool vanishes;
  Polynomial gcd_d;
  std::pair<Polynomial, Polynomial> reduced_pair;
  std::variant<RadicalTrace, HeightTwoWitness> evidence;
  /// Set when the pair was settled by divisibility before any Groebner work.
  bool degenerate = false;

  bool has_radical_trace() const { return std::holds_alternative<RadicalTrace>(evidence); }
};

namespace detail {

/// Trivial certificate used when the reduced pair contains a unit.
inline RadicalTrace unit_radical_trace(const Polynomial& f_red, const Polynomial& g_red, const Polynomial& d) {
  Ring ext = extend_ring(f_red.ring(), 1);
  IdealHandle extended(ext, {embed(f_red, ext, 1), embed(g_red, ext, 1),
                             Polynomial::one(ext) - Polynomial::variable(ext, 0) * embed(d, ext, 1)});
  Polynomial one = Polynomial::one(ext);
  extended.seed_basis(MonomialOrder::grevlex(), {one});
  ReductionTrace trace{one, Polynomial(ext), {{one, one}}, MonomialOrder::grevlex()};
  return {std::move(extended), std::move(trace)};
}

}  // namespace detail

inline H2Verdict h2_vanishes(const Polynomial& f, const Polynomial& g) {
  Polynomial::check_same(f, g);
  if (f.is_zero() || g.is_zero()) throw ZeroPolynomial("h2_vanishes");

  // f | g or g | f: the gcd is an associate of one input and the reduced
  // pair contains a unit.
  if (auto q = exact_divide(g, f)) {
    Polynomial d = f.monic();
    Polynomial fr = *exact_divide(f, d);
    Polynomial gr = *exact_divide(g, d);
    auto ev = detail::unit_radical_trace(fr, gr, d);
    return {true, d, {fr, gr}, std::move(ev), true};
  }
  if (auto q = exact_divide(f, g)) {
    Polynomial d = g.monic();
    Polynomial fr = *exact_divide(f, d);
    Polynomial gr = *exact_divide(g, d);
    auto ev = detail::unit_radical_trace(fr, gr, d);
    return {true, d, {fr, gr}, std::move(ev), true};
  }

  Polynomial d = multivariate_gcd(f, g);
  Polynomial fr = *exact_divide(f, d);
  Polynomial gr = *exact_divide(g, d);
  IdealHandle reduced(f.ring(), {fr, gr});
  auto rad = radical_membership(d, reduced);
  if (rad.member) {
    return {true, d, {fr, gr}, RadicalTrace{std::move(rad.extended), std::move(rad.trace)}, false};
  }
  IdealHandle sat = saturation(reduced, d);
  if (sat.is_unit()) throw Error("h2_vanishes: saturation is the unit ideal although d is not in the radical");
  std::size_t h = height_and_grade(sat);
  if (h != 2) throw Error("h2_vanishes: saturated witness has height " + std::to_string(h) + ", expected 2");
  return {false, d, {fr, gr}, HeightTwoWitness{std::move(sat), h}, false};
}

/// (fg)^n in (f^{n+1}, g^{n+1}) for a specific n.
struct CertificateN {
  unsigned n;
  ReductionTrace trace;
};

struct NotFoundUpTo {
  unsigned n_max;
};

using CertificateSearch = std::variant<CertificateN, NotFoundUpTo>;

inline constexpr unsigned kDefaultCertificateBound = 8;

/// Smallest n <= n_max with (fg)^n in (f^{n+1}, g^{n+1}).
inline CertificateSearch h2_certificate_search(const Polynomial& f, const Polynomial& g,
                                               unsigned n_max = kDefaultCertificateBound) {
  Polynomial::check_same(f, g);
  if (f.is_zero() || g.is_zero()) throw ZeroPolynomial("h2_certificate_search");
  if (n_max < 1) throw DomainError("h2_certificate_search: n_max must be positive");
  const Polynomial fg = f * g;
  for (unsigned n = 1; n <= n_max; ++n) {
    IdealHandle powers(f.ring(), {f.pow(n + 1), g.pow(n + 1)});
    auto result = ideal_membership(fg.pow(n), powers);
    if (result.member) return CertificateN{n, std::move(result.trace)};
  }
  return NotFoundUpTo{n_max};
}

enum class ProregularityReason { AmbientNoetherian, ConductorTransfer };

inline const char* to_string(ProregularityReason r) {
  return r == ProregularityReason::AmbientNoetherian ? "AmbientNoetherian" : "ConductorTransfer";
}

struct ProregularityStatus {
  bool holds;
  ProregularityReason reason;
};

/// Weak proregularity in the Noetherian ambient ring: always holds.
inline ProregularityStatus weakly_proregular_in_ambient(const std::vector<Polynomial>& seq) {
  if (seq.empty()) throw DomainError("weakly_proregular_status: empty sequence");
  return {true, ProregularityReason::AmbientNoetherian};
}

/// Weak proregularity in R = k + Q: transferred from S when every element of
/// the sequence lies in the conductor Q.
inline ProregularityStatus weakly_proregular_in_subring(const std::vector<Polynomial>& seq,
                                                        const IdealHandle& conductor) {
  if (seq.empty()) throw DomainError("weakly_proregular_status: empty sequence");
  for (const auto& f : seq) {
    if (!ideal_membership(f, conductor).member)
      throw DomainError("weakly_proregular_status: " + f.to_string() +
                        " is not in the conductor, transfer from the ambient ring does not apply");
  }
  return {true, ProregularityReason::ConductorTransfer};
}

}  // namespace cmkernel

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmkernel/cech.hpp"
#include "cmkernel/errors.hpp"
#include "cmkernel/groebner.hpp"
#include "cmkernel/ideal_ops.hpp"
#include "cmkernel/polynomial.hpp"

namespace cmkernel {

/// The amalgamated algebra R = k + Q inside S = k[x_1..x_n], for a proper
/// S-ideal Q. Q is the conductor of R ⊂ S and a maximal ideal of R.
class KQRing {
 public:
  static KQRing make(const Ring& ambient, std::vector<Polynomial> q_gens) {
    if (q_gens.empty()) throw DomainError("make_kq_ring: Q needs at least one generator");
    for (const auto& q : q_gens)
      if (!same_ring(q.ring(), ambient)) throw RingMismatch();
    IdealHandle q(ambient, q_gens);
    if (q.is_unit()) throw UnitIdeal("make_kq_ring: Q = S makes R = S");
    return KQRing(ambient, std::move(q_gens), std::move(q));
  }

  const Ring& ambient() const { return ambient_; }
  const std::vector<Polynomial>& conductor_generators() const { return gens_; }
  const IdealHandle& conductor() const { return conductor_; }

  /// R/Q = k, so Q is maximal in R.
  static constexpr bool conductor_is_maximal() { return true; }

  bool contains(const Polynomial& h) const {
    Polynomial shifted = h - Polynomial::constant(h.ring(), h.constant_term());
    return ideal_membership(shifted, conductor_).member;
  }

  bool in_conductor(const Polynomial& h) const { return ideal_membership(h, conductor_).member; }

  bool is_monomial_conductor() const {
    return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.size() == 1; });
  }

  std::string to_string() const {
    return "k + " + ideal_text(gens_) + " in " + ambient_->to_string();
  }

  /// k-algebra generators of R for monomial Q: monomials of Q of degree at
  /// most `degree_bound` that are not products of two monomials of Q.
  /// `truncated` reports whether a generator reached the bound, in which case
  /// the list may continue beyond it.
  struct AlgebraGenerators {
    std::vector<Polynomial> generators;
    bool truncated;
  };

  AlgebraGenerators monomial_algebra_generators(unsigned degree_bound) const;

 private:
  KQRing(Ring ambient, std::vector<Polynomial> gens, IdealHandle q)
      : ambient_(std::move(ambient)), gens_(std::move(gens)), conductor_(std::move(q)) {}

  Ring ambient_;
  std::vector<Polynomial> gens_;
  IdealHandle conductor_;
};

inline KQRing make_kq_ring(const Ring& ambient, std::vector<Polynomial> q_gens) {
  return KQRing::make(ambient, std::move(q_gens));
}

namespace detail {

/// All exponent vectors in `arity` variables with total degree <= bound,
/// ordered by degree and then ascending grevlex.
inline std::vector<Monomial> monomials_up_to(std::size_t arity, unsigned bound) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(arity, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == arity) {
      out.emplace_back(e);
      return;
    }
    for (unsigned a = 0; a <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
    e[i] = 0;
  };
  rec(rec, 0, bound);
  auto order = MonomialOrder::grevlex();
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return order.less(a, b); });
  return out;
}

}  // namespace detail

inline KQRing::AlgebraGenerators KQRing::monomial_algebra_generators(unsigned degree_bound) const {
  if (!is_monomial_conductor()) throw DomainError("algebra generators are only listed for monomial Q");
  std::vector<Monomial> lead;
  for (const auto& g : gens_) lead.push_back(g.terms().begin()->first);
  auto in_q = [&](const Monomial& m) {
    return std::any_of(lead.begin(), lead.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  AlgebraGenerators result{{}, false};
  for (const auto& m : detail::monomials_up_to(ambient_->arity(), degree_bound)) {
    if (m.is_one() || !in_q(m)) continue;
    bool decomposable = false;
    for (const auto& a : detail::monomials_up_to(ambient_->arity(), static_cast<unsigned>(m.degree()))) {
      if (a.is_one() || a == m || !a.divides(m)) continue;
      if (in_q(a) && in_q(a.quotient_of(m))) {
        decomposable = true;
        break;
      }
    }
    if (decomposable) continue;
    result.generators.push_back(Polynomial::monomial(ambient_, m));
    if (m.degree() == degree_bound) result.truncated = true;
  }
  return result;
}

/// An ideal (g_1..g_m)R of R = k + Q with every g_i in Q. As a k-space it
/// is span_k(g_1..g_m) + (g_1..g_m)·Q, the second summand an S-ideal.
class KQIdeal {
 public:
  KQIdeal(const KQRing& parent, std::vector<Polynomial> gens)
      : parent_(parent), gens_(std::move(gens)), product_(make_product(parent_, gens_)) {}

  const KQRing& parent() const { return parent_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  /// The S-ideal (g_1..g_m)·Q.
  const IdealHandle& product_ideal() const { return product_; }

 private:
  static IdealHandle make_product(const KQRing& parent, const std::vector<Polynomial>& gens) {
    if (gens.empty()) throw DomainError("KQIdeal needs at least one generator");
    std::vector<Polynomial> prod;
    for (const auto& g : gens) {
      if (!same_ring(g.ring(), parent.ambient())) throw RingMismatch();
      if (!parent.in_conductor(g))
        throw DomainError("KQIdeal generator " + g.to_string() + " is not in the conductor Q");
      for (const auto& q : parent.conductor_generators()) {
        Polynomial p = g * q;
        if (!p.is_zero()) prod.push_back(std::move(p));
      }
    }
    if (prod.empty()) prod.push_back(Polynomial(parent.ambient()));
    return IdealHandle(parent.ambient(), std::move(prod));
  }

  KQRing parent_;
  std::vector<Polynomial> gens_;
  IdealHandle product_;
};

/// h = sum scalars_i * g_i + p with p in (g)·Q; `trace` divides
/// h - sum scalars_i * g_i by the basis of (g)·Q (zero remainder when
/// member). When not a member, `trace` is the division of h itself.
struct KQMembership {
  bool member;
  std::vector<Scalar> scalars;
  ReductionTrace trace;

  /// sum scalars_i * g_i + sum cofactor_j * basis_j, which equals h.
  Polynomial recombined(const std::vector<Polynomial>& gens) const {
    Polynomial sum = trace.recombined();
    for (std::size_t i = 0; i < scalars.size(); ++i) sum += gens[i].scaled(scalars[i]);
    return sum;
  }
};

namespace detail {

/// Solves sum alpha_i * columns_i = target over k. Returns one solution
/// (free unknowns set to zero) or nullopt.
inline std::optional<std::vector<Scalar>> solve_linear_combination(const std::vector<Polynomial>& columns,
                                                                   const Polynomial& target,
                                                                   const CoefficientField& k) {
  std::vector<Monomial> rows;
  auto collect = [&](const Polynomial& p) {
    for (const auto& [m, c] : p.terms())
      if (std::find(rows.begin(), rows.end(), m) == rows.end()) rows.push_back(m);
  };
  for (const auto& c : columns) collect(c);
  collect(target);
  const std::size_t n = columns.size();
  // Augmented matrix, one row per monomial.
  std::vector<std::vector<Scalar>> a(rows.size(), std::vector<Scalar>(n + 1, Scalar(0)));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = columns[c].coefficient(rows[r]);
    a[r][n] = target.coefficient(rows[r]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && a[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(a[p], a[rank]);
    Scalar inv = k.inv(a[rank][c]);
    for (auto& v : a[rank]) v = k.mul(v, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Scalar factor = a[r][c];
      for (std::size_t cc = 0; cc <= n; ++cc) a[r][cc] = k.sub(a[r][cc], k.mul(factor, a[rank][cc]));
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (a[r][n] != 0) return std::nullopt;
  std::vector<Scalar> x(n, Scalar(0));
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = a[r][n];
  return x;
}

}  // namespace detail

/// Membership of h in (g)R, decided on normal forms modulo (g)·Q.
inline KQMembership kq_ideal_membership(const Polynomial& h, const KQIdeal& J) {
  const auto& product = J.product_ideal();
  const auto& k = h.field();
  Polynomial::check_same(h, product.generators().front());
  const auto& basis = product.groebner_basis();
  const auto order = MonomialOrder::grevlex();
  auto h_nf = reduce_with_trace(h, basis, order);
  std::vector<Polynomial> g_nf;
  for (const auto& g : J.generators()) g_nf.push_back(reduce_with_trace(g, basis, order).remainder);
  auto alpha = detail::solve_linear_combination(g_nf, h_nf.remainder, k);
  if (!alpha) return {false, {}, std::move(h_nf)};
  Polynomial residual = h;
  for (std::size_t i = 0; i < alpha->size(); ++i) residual -= J.generators()[i].scaled((*alpha)[i]);
  auto trace = reduce_with_trace(residual, basis, order);
  if (!trace.remainder.is_zero()) throw Error("kq_ideal_membership: residual did not reduce to zero");
  return {true, std::move(*alpha), std::move(trace)};
}

/// r * seq[index] lies in the prefix ideal while r does not.
struct RegularityWitness {
  std::size_t index;  // 1-based position of the element that fails
  Polynomial r;
  KQMembership product_membership;
  KQMembership r_membership;
};

struct RegularityVerdict {
  bool regular;
  std::optional<RegularityWitness> failure_witness;
  unsigned search_bound;
  /// True verdicts only hold up to the search bound.
  bool conditional() const { return regular; }
};

inline unsigned default_degree_bound(const KQRing& R) {
  std::uint64_t d = 0;
  for (const auto& g : R.conductor_generators())
    if (!g.is_zero()) d = std::max(d, g.total_degree());
  return static_cast<unsigned>(2 * d + 3);
}

namespace detail {

/// Candidates r in Q: monomial multiples m*q_j of the conductor generators
/// with total degree <= bound, ordered by degree then ascending grevlex of
/// the leading monomial.
inline std::vector<Polynomial> conductor_candidates(const KQRing& R, unsigned bound) {
  std::vector<Polynomial> out;
  const auto order = MonomialOrder::grevlex();
  for (const auto& q : R.conductor_generators()) {
    if (q.is_zero()) continue;
    auto dq = q.total_degree();
    if (dq > bound) continue;
    for (const auto& m : monomials_up_to(R.ambient()->arity(), static_cast<unsigned>(bound - dq))) {
      Polynomial c = q.times_monomial(m).monic(order);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
    }
  }
  std::stable_sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
    auto da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    auto c = order.compare(a.leading_term(order).monomial, b.leading_term(order).monomial);
    if (c != 0) return c < 0;
    return a.to_string() < b.to_string();
  });
  return out;
}

}  // namespace detail

/// Searches for a failure of regularity of `seq` on R among conductor
/// elements of degree <= degree_bound.
inline RegularityVerdict kq_regular_sequence(const std::vector<Polynomial>& seq, const KQRing& R,
                                             unsigned degree_bound) {
  if (seq.empty()) throw DomainError("kq_regular_sequence: empty sequence");
  for (const auto& f : seq) {
    if (!same_ring(f.ring(), R.ambient())) throw RingMismatch();
    if (!R.in_conductor(f)) throw DomainError("kq_regular_sequence: " + f.to_string() + " is not in Q");
  }
  const Ring& S = R.ambient();
  // R is a domain: the first element is regular iff nonzero.
  if (seq.front().is_zero()) {
    KQIdeal zero(R, {Polynomial(S)});
    Polynomial r = detail::conductor_candidates(R, degree_bound).empty()
                       ? R.conductor_generators().front()
                       : detail::conductor_candidates(R, degree_bound).front();
    return {false,
            RegularityWitness{1, r, kq_ideal_membership(Polynomial(S), zero), kq_ideal_membership(r, zero)},
            degree_bound};
  }
  auto candidates = detail::conductor_candidates(R, degree_bound);
  for (std::size_t i = 1; i < seq.size(); ++i) {
    KQIdeal prefix(R, std::vector<Polynomial>(seq.begin(), seq.begin() + static_cast<long>(i)));
    for (const auto& r : candidates) {
      auto prod = kq_ideal_membership(r * seq[i], prefix);
      if (!prod.member) continue;
      auto self = kq_ideal_membership(r, prefix);
      if (self.member) continue;
      return {false, RegularityWitness{i + 1, r, std::move(prod), std::move(self)}, degree_bound};
    }
  }
  return {true, std::nullopt, degree_bound};
}

/// Replays a witness: both membership decompositions reproduce their
/// targets and the verdicts are as claimed.
inline bool witness_replays(const RegularityWitness& w, const std::vector<Polynomial>& seq, const KQRing& R) {
  if (w.index < 1 || w.index > seq.size()) return false;
  std::vector<Polynomial> prefix(seq.begin(), seq.begin() + static_cast<long>(w.index - 1));
  if (prefix.empty()) prefix.push_back(Polynomial(R.ambient()));
  KQIdeal J(R, prefix);
  Polynomial target = w.r * seq[w.index - 1];
  auto prod = kq_ideal_membership(target, J);
  auto self = kq_ideal_membership(w.r, J);
  if (!prod.member || self.member) return false;
  if (prod.recombined(J.generators()) != target) return false;
  if (!w.product_membership.member || w.r_membership.member) return false;
  return w.product_membership.recombined(J.generators()) == target;
}

struct StrongParameterResult {
  bool strong;
  H2Verdict h2;
};

/// For Q = (f, g): f, g is a strong parameter sequence of R iff
/// H^2_{f,g}(S) != 0.
inline StrongParameterResult strong_param_pair_two_generated(const KQRing& R) {
  const auto& gens = R.conductor_generators();
  if (gens.size() != 2) throw DomainError("strong_param_pair_two_generated: Q must have exactly two generators");
  if (gens[0].is_zero() || gens[1].is_zero())
    throw ZeroPolynomial("strong_param_pair_two_generated: conductor generator");
  auto verdict = h2_vanishes(gens[0], gens[1]);
  bool strong = !verdict.vanishes;
  return {strong, std::move(verdict)};
}

inline ProregularityStatus weakly_proregular_status(const std::vector<Polynomial>& seq) {
  return weakly_proregular_in_ambient(seq);
}

inline ProregularityStatus weakly_proregular_status(const std::vector<Polynomial>& seq, const KQRing& R) {
  return weakly_proregular_in_subring(seq, R.conductor());
}

enum class CMVerdict { NOT_CM, NO_OBSTRUCTION_FOUND };

inline const char* to_string(CMVerdict v) { return v == CMVerdict::NOT_CM ? "NOT_CM" : "NO_OBSTRUCTION_FOUND"; }

struct ObstructionReport {
  explicit ObstructionReport(KQRing r) : ring(std::move(r)) {}

  KQRing ring;
  CMVerdict verdict = CMVerdict::NO_OBSTRUCTION_FOUND;
  std::optional<std::pair<Polynomial, Polynomial>> sequence;
  std::optional<std::pair<Polynomial, Polynomial>> aux;
  std::optional<H2Verdict> h2;
  std::optional<RegularityVerdict> regularity;
  std::optional<ProregularityStatus> proregularity;
  std::vector<std::string> narrative;
  unsigned degree_bound = 0;
  /// Krull dimension of R, recorded only for k + x*k[x,y,z].
  std::optional<unsigned> recorded_dimension;
};

namespace detail {

inline std::vector<Polynomial> aux_candidates(const Ring& S) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < S->arity(); ++i) out.push_back(Polynomial::variable(S, i));
  for (const auto& m : monomials_up_to(S->arity(), 2))
    if (m.degree() == 2) out.push_back(Polynomial::monomial(S, m));
  return out;
}

inline bool is_single_variable(const Polynomial& f) {
  return f.size() == 1 && f.terms().begin()->first.degree() == 1 && f.terms().begin()->second == 1;
}

}  // namespace detail

/// Q = (f): looks for g, h with f, g, h regular on S, which makes fg, fh a
/// strong parameter sequence of R, and then for a witness that fg, fh is not
/// regular on R.
inline ObstructionReport principal_obstruction(const KQRing& R,
                                               std::optional<std::pair<Polynomial, Polynomial>> aux,
                                               unsigned degree_bound) {
  const auto& gens = R.conductor_generators();
  if (gens.size() != 1) throw DomainError("principal_obstruction: Q must be principal");
  const Polynomial& f = gens.front();
  if (f.is_zero()) throw ZeroPolynomial("principal_obstruction");
  const Ring& S = R.ambient();

  ObstructionReport report(R);
  report.degree_bound = degree_bound;
  if (S->arity() == 3 && detail::is_single_variable(f)) {
    report.recorded_dimension = 3;
    report.narrative.push_back("dim R = 3 for R = k + x*k[x,y,z] (recorded, not computed)");
  }

  if (aux) {
    Polynomial::check_same(aux->first, f);
    Polynomial::check_same(aux->second, f);
    if (!is_regular_sequence({f, aux->first, aux->second}))
      throw DomainError("principal_obstruction: f, " + aux->first.to_string() + ", " + aux->second.to_string() +
                        " is not a regular sequence on S");
    report.narrative.push_back("supplied g, h: f, g, h is a regular sequence on S (colon-ideal tests)");
  } else {
    auto cands = detail::aux_candidates(S);
    for (std::size_t a = 0; a < cands.size() && !aux; ++a) {
      if (!is_regular_sequence({f, cands[a]})) continue;
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b) continue;
        if (is_regular_sequence({f, cands[a], cands[b]})) {
          aux = std::make_pair(cands[a], cands[b]);
          break;
        }
      }
    }
    if (aux) {
      report.narrative.push_back("found g = " + aux->first.to_string() + ", h = " + aux->second.to_string() +
                                 " with f, g, h a regular sequence on S (colon-ideal tests)");
    }
  }

  if (!aux) {
    report.narrative.push_back("no g, h among variables and degree-2 monomials extend f to a regular sequence "
                               "of length 3 on S; no strong parameter sequence fg, fh is available");
    if (S->arity() == 2 && detail::is_single_variable(f))
      report.narrative.push_back("k + x*k[x,y] is known to be Cohen-Macaulay; whether its polynomial extension "
                                 "A[z] is Cohen-Macaulay is not decided here");
    report.narrative.push_back("no obstruction found; this is not a certificate of Cohen-Macaulayness");
    return report;
  }

  report.aux = aux;
  Polynomial fg = f * aux->first;
  Polynomial fh = f * aux->second;
  report.sequence = std::make_pair(fg, fh);

  auto meet = ideal_intersection(IdealHandle(S, {f}), IdealHandle(S, {aux->first, aux->second}));
  if (ideals_equal(meet, IdealHandle(S, {fg, fh})))
    report.narrative.push_back("(f) ∩ (g, h) = (fg, fh) verified");
  report.proregularity = weakly_proregular_status({fg, fh}, R);
  report.narrative.push_back("fg, fh lie in the conductor Q, so weak proregularity transfers from S");
  report.h2 = h2_vanishes(fg, fh);
  report.narrative.push_back(std::string("H^2_{fg,fh}(S) ") + (report.h2->vanishes ? "= 0" : "!= 0") +
                             " (gcd " + report.h2->gcd_d.to_string() + ")");
  report.narrative.push_back("f, g, h regular on S makes fg, fh a strong parameter sequence of R");

  report.regularity = kq_regular_sequence({fg, fh}, R, degree_bound);
  if (report.regularity->regular) {
    report.narrative.push_back("no regularity-failure witness of degree <= " + std::to_string(degree_bound) +
                               " found; raise the bound");
    return report;
  }
  const auto& w = *report.regularity->failure_witness;
  report.narrative.push_back("witness r = " + w.r.to_string() + ": r*fh in (fg)R but r not in (fg)R, so fg, fh "
                             "is not a regular sequence of R");
  report.narrative.push_back("a strong parameter sequence that is not regular: R is not Cohen-Macaulay");
  report.verdict = CMVerdict::NOT_CM;
  return report;
}

/// Dispatches on the number of conductor generators.
inline ObstructionReport cm_obstruction_report(const KQRing& R, unsigned degree_bound) {
  const auto& gens = R.conductor_generators();
  if (gens.size() == 1) return principal_obstruction(R, std::nullopt, degree_bound);
  if (gens.size() != 2) throw DomainError("cm_obstruction_report: Q with more than two generators is not supported");

  ObstructionReport report(R);
  report.degree_bound = degree_bound;
  auto sp = strong_param_pair_two_generated(R);
  report.sequence = std::make_pair(gens[0], gens[1]);
  report.proregularity = weakly_proregular_status({gens[0], gens[1]}, R);
  report.narrative.push_back("f is a nonzero element of the domain R, hence a parameter element");
  report.narrative.push_back("f, g lie in the conductor Q, so weak proregularity transfers from S");
  const auto& h2 = sp.h2;
  if (h2.vanishes) {
    report.narrative.push_back("H^2_{f,g}(S) = 0: d = " + h2.gcd_d.to_string() +
                               " lies in the radical of (f/d, g/d)");
    report.narrative.push_back("f, g is not a strong parameter sequence of R; no obstruction found, which is "
                               "not a certificate of Cohen-Macaulayness");
  } else {
    const auto& w = std::get<HeightTwoWitness>(h2.evidence);
    report.narrative.push_back("H^2_{f,g}(S) != 0: d = " + h2.gcd_d.to_string() +
                               " is not in the radical of (f/d, g/d); saturated witness " +
                               w.saturated.to_string() + " has height " + std::to_string(w.height));
    report.narrative.push_back("H^2_{f,g}(R) = H^2_{f,g}(S) and Q is the only prime of R over (f, g), so f, g "
                               "is a strong parameter sequence of R");
    report.narrative.push_back("a Cohen-Macaulay R forces H^2_{f,g}(S) = 0, hence R is not Cohen-Macaulay");
    report.verdict = CMVerdict::NOT_CM;
  }
  report.regularity = kq_regular_sequence({gens[0], gens[1]}, R, degree_bound);
  if (!report.regularity->regular)
    report.narrative.push_back("witness r = " + report.regularity->failure_witness->r.to_string() +
                               " shows f, g is not a regular sequence of R");
  report.h2 = std::move(sp.h2);
  return report;
}

/// For a nonvanishing verdict, the witness ideal has height exactly 2.
/// nullopt when the verdict vanishes and the check does not apply.
inline std::optional<bool> height_consistency_check(const H2Verdict& verdict) {
  if (verdict.vanishes) return std::nullopt;
  const auto& w = std::get<HeightTwoWitness>(verdict.evidence);
  if (w.saturated.is_unit()) return false;
  return height_and_grade(w.saturated) == 2 && w.height == 2;
}

inline std::optional<bool> height_consistency_check(const Polynomial& f, const Polynomial& g) {
  return height_consistency_check(h2_vanishes(f, g));
}

}  // namespace cmkernel

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "cmkernel/errors.hpp"
#include "cmkernel/monomial.hpp"
#include "cmkernel/polynomial.hpp"

namespace cmkernel {

namespace detail {

/// Polynomial as a term list sorted descending under a fixed order. This is
/// the working representation of the Buchberger engine.
using SortedPoly = std::vector<Term>;

inline SortedPoly sorted(const Polynomial& f, const MonomialOrder& order) { return f.sorted_terms(order); }

inline Polynomial unsorted(const Ring& ring, const SortedPoly& p) {
  Polynomial::TermMap t;
  for (const auto& term : p) t.emplace(term.monomial, term.coefficient);
  return Polynomial(ring, std::move(t));
}

/// p - c * m * q, merging two descending term lists.
inline SortedPoly sub_multiple(const SortedPoly& p, const Scalar& c, const Monomial& m, const SortedPoly& q,
                               const MonomialOrder& order, const CoefficientField& k) {
  SortedPoly out;
  out.reserve(p.size() + q.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < q.size()) {
    if (j == q.size()) {
      out.push_back(p[i++]);
      continue;
    }
    Monomial qm = q[j].monomial * m;
    if (i == p.size()) {
      out.push_back({std::move(qm), k.neg(k.mul(c, q[j].coefficient))});
      ++j;
      continue;
    }
    auto cmp = order.compare(p[i].monomial, qm);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(qm), k.neg(k.mul(c, q[j].coefficient))});
      ++j;
    } else {
      Scalar v = k.sub(p[i].coefficient, k.mul(c, q[j].coefficient));
      if (v != 0) out.push_back({p[i].monomial, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

inline void make_monic(SortedPoly& p, const CoefficientField& k) {
  if (p.empty() || p.front().coefficient == 1) return;
  Scalar inv = k.inv(p.front().coefficient);
  for (auto& t : p) t.coefficient = k.mul(t.coefficient, inv);
}

/// Full division of p by `basis`. Cofactors are accumulated into
/// `cofactors` when non-null (one term map per basis element).
inline SortedPoly reduce_fully(SortedPoly p, const std::vector<SortedPoly>& basis, const MonomialOrder& order,
                               const CoefficientField& k,
                               std::vector<Polynomial::TermMap>* cofactors = nullptr,
                               std::size_t skip = static_cast<std::size_t>(-1)) {
  SortedPoly remainder;
  while (!p.empty()) {
    const Term& lead = p.front();
    std::size_t hit = basis.size();
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (b == skip || basis[b].empty()) continue;
      if (basis[b].front().monomial.divides(lead.monomial)) {
        hit = b;
        break;
      }
    }
    if (hit == basis.size()) {
      remainder.push_back(lead);
      p.erase(p.begin());
      continue;
    }
    const auto& g = basis[hit];
    Monomial m = g.front().monomial.quotient_of(lead.monomial);
    Scalar c = k.div(lead.coefficient, g.front().coefficient);
    if (cofactors) {
      auto [it, inserted] = (*cofactors)[hit].try_emplace(m, c);
      if (!inserted) it->second = k.add(it->second, c);
    }
    p = sub_multiple(p, c, m, g, order, k);
  }
  return remainder;
}

struct CriticalPair {
  std::size_t i, j;
  Monomial lcm;
};

}  // namespace detail

/// Reduced Groebner basis of (gens) under `order`. Output is monic and sorted
/// by descending leading monomial; permuting the input does not change it.
inline std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order) {
  if (gens.empty()) throw DomainError("buchberger: empty generator list");
  const Ring& ring = gens.front().ring();
  for (const auto& g : gens)
    if (!same_ring(g.ring(), ring)) throw RingMismatch();
  const auto& k = ring->field;

  std::vector<detail::SortedPoly> basis;
  std::vector<detail::CriticalPair> pending;
  // (i, j) with i < j still waiting; used by the chain criterion.
  std::vector<std::vector<bool>> waiting;

  auto add_element = [&](detail::SortedPoly p) {
    detail::make_monic(p, k);
    std::size_t idx = basis.size();
    basis.push_back(std::move(p));
    for (auto& row : waiting) row.push_back(false);
    waiting.emplace_back(basis.size(), false);
    for (std::size_t i = 0; i < idx; ++i) {
      pending.push_back({i, idx, basis[i].front().monomial.lcm(basis[idx].front().monomial)});
      waiting[i][idx] = true;
    }
  };

  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    auto r = detail::reduce_fully(detail::sorted(g, order), basis, order, k);
    if (!r.empty()) add_element(std::move(r));
  }

  auto is_waiting = [&](std::size_t a, std::size_t b) {
    return a < b ? waiting[a][b] : waiting[b][a];
  };

  while (!pending.empty()) {
    // Normal strategy: smallest lcm first, ties broken by pair indices.
    auto best = std::min_element(pending.begin(), pending.end(), [&](const auto& a, const auto& b) {
      auto c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    detail::CriticalPair pair = *best;
    pending.erase(best);
    waiting[pair.i][pair.j] = false;

    const auto& gi = basis[pair.i];
    const auto& gj = basis[pair.j];
    if (gi.front().monomial.coprime(gj.front().monomial)) continue;

    bool chain = false;
    for (std::size_t m = 0; m < basis.size() && !chain; ++m) {
      if (m == pair.i || m == pair.j) continue;
      if (basis[m].front().monomial.divides(pair.lcm) && !is_waiting(pair.i, m) && !is_waiting(pair.j, m))
        chain = true;
    }
    if (chain) continue;

    Monomial ui = gi.front().monomial.quotient_of(pair.lcm);
    Monomial uj = gj.front().monomial.quotient_of(pair.lcm);
    detail::SortedPoly left;
    for (const auto& t : gi) left.push_back({t.monomial * ui, t.coefficient});
    auto spoly = detail::sub_multiple(left, Scalar(1), uj, gj, order, k);
    auto r = detail::reduce_fully(std::move(spoly), basis, order, k);
    if (!r.empty()) add_element(std::move(r));
  }

  // Minimalize: drop elements whose leading monomial is a multiple of another.
  std::vector<detail::SortedPoly> minimal;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < basis.size() && !redundant; ++b) {
      if (a == b) continue;
      const auto& ma = basis[a].front().monomial;
      const auto& mb = basis[b].front().monomial;
      if (mb.divides(ma) && (mb != ma || b < a)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[a]);
  }

  // Interreduce tails.
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    detail::SortedPoly head{minimal[a].front()};
    detail::SortedPoly tail(minimal[a].begin() + 1, minimal[a].end());
    auto reduced = detail::reduce_fully(std::move(tail), minimal, order, k, nullptr, a);
    head.insert(head.end(), reduced.begin(), reduced.end());
    minimal[a] = std::move(head);
  }

  std::sort(minimal.begin(), minimal.end(), [&](const auto& a, const auto& b) {
    return order.less(b.front().monomial, a.front().monomial);
  });
  std::vector<Polynomial> out;
  out.reserve(minimal.size());
  for (const auto& p : minimal) out.push_back(detail::unsorted(ring, p));
  return out;
}

/// Record of a full division: input = sum cofactor_i * basis_i + remainder.
struct ReductionTrace {
  Polynomial input;
  Polynomial remainder;
  /// One entry per basis element, in basis order: (basis element, cofactor).
  std::vector<std::pair<Polynomial, Polynomial>> quotients;
  MonomialOrder order = MonomialOrder::grevlex();

  Polynomial recombined() const {
    Polynomial sum = remainder;
    for (const auto& [g, c] : quotients) sum += c * g;
    return sum;
  }

  bool identity_holds() const { return recombined() == input; }

  /// No remainder term is divisible by a basis leading monomial.
  bool remainder_is_reduced() const {
    for (const auto& [m, c] : remainder.terms())
      for (const auto& [g, q] : quotients)
        if (!g.is_zero() && g.leading_term(order).monomial.divides(m)) return false;
    return true;
  }
};

/// Divides h by an explicit basis and returns the full trace.
inline ReductionTrace reduce_with_trace(const Polynomial& h, const std::vector<Polynomial>& basis,
                                        const MonomialOrder& order) {
  const auto& k = h.field();
  std::vector<detail::SortedPoly> sorted_basis;
  for (const auto& g : basis) {
    Polynomial::check_same(h, g);
    sorted_basis.push_back(detail::sorted(g, order));
  }
  std::vector<Polynomial::TermMap> cof(basis.size());
  auto rem = detail::reduce_fully(detail::sorted(h, order), sorted_basis, order, k, &cof);
  ReductionTrace trace{h, detail::unsorted(h.ring(), rem), {}, order};
  for (std::size_t i = 0; i < basis.size(); ++i)
    trace.quotients.emplace_back(basis[i], Polynomial(h.ring(), std::move(cof[i])));
  return trace;
}

/// An ideal given by generators, with a per-order memo of reduced Groebner
/// bases. Copies share the memo.
class IdealHandle {
 public:
  IdealHandle(Ring ring, std::vector<Polynomial> generators)
      : ring_(std::move(ring)), gens_(std::move(generators)), cache_(std::make_shared<Cache>()) {
    if (gens_.empty()) throw DomainError("ideal needs at least one generator");
    for (const auto& g : gens_)
      if (!same_ring(g.ring(), ring_)) throw RingMismatch();
  }

  explicit IdealHandle(std::vector<Polynomial> generators)
      : IdealHandle(generators.empty() ? throw DomainError("ideal needs at least one generator")
                                       : generators.front().ring(),
                    std::move(generators)) {}

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }

  const std::vector<Polynomial>& groebner_basis(const MonomialOrder& order = MonomialOrder::grevlex()) const {
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->bases.find(order);
      if (it != cache_->bases.end()) return it->second;
    }
    auto basis = buchberger(gens_, order);
    std::lock_guard lock(cache_->mutex);
    return cache_->bases.try_emplace(order, std::move(basis)).first->second;
  }

  /// Installs a basis already known to be the reduced basis under `order`.
  void seed_basis(const MonomialOrder& order, std::vector<Polynomial> basis) const {
    std::lock_guard lock(cache_->mutex);
    cache_->bases.try_emplace(order, std::move(basis));
  }

  bool is_zero() const { return groebner_basis().empty(); }

  bool is_unit() const {
    const auto& gb = groebner_basis();
    return gb.size() == 1 && gb.front().is_unit();
  }

  std::string to_string() const {
    std::string s = "ideal(";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
    return s + ")";
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<MonomialOrder, std::vector<Polynomial>> bases;
  };

  Ring ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

inline ReductionTrace normal_form(const Polynomial& h, const IdealHandle& ideal,
                                  const MonomialOrder& order = MonomialOrder::grevlex()) {
  Polynomial::check_same(h, ideal.generators().front());
  return reduce_with_trace(h, ideal.groebner_basis(order), order);
}

/// Text form `ideal(f1, f2, ...)` of a basis or generator list.
inline std::string ideal_text(const std::vector<Polynomial>& polys) {
  std::string s = "ideal(";
  for (std::size_t i = 0; i < polys.size(); ++i) s += (i ? ", " : "") + polys[i].to_string();
  return s + ")";
}

}  // namespace cmkernel

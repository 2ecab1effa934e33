#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmkernel/errors.hpp"
#include "cmkernel/field.hpp"
#include "cmkernel/monomial.hpp"
#include "cmkernel/ring.hpp"

namespace cmkernel {

struct Term {
  Monomial monomial;
  Scalar coefficient;
};

/// Sparse distributed polynomial. Terms live in a map keyed by exponent
/// vector, so two polynomials are equal iff their term maps are equal.
/// Zero coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Scalar>;

  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

  Polynomial(Ring ring, TermMap terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->first.arity() != ring_->arity()) throw DomainError("monomial arity does not match ring");
      it->second = ring_->field.reduce(it->second);
      it = it->second == 0 ? terms_.erase(it) : std::next(it);
    }
  }

  static Polynomial constant(const Ring& ring, const Scalar& c) {
    TermMap t;
    t.emplace(Monomial(ring->arity()), c);
    return Polynomial(ring, std::move(t));
  }

  static Polynomial one(const Ring& ring) { return constant(ring, 1); }

  static Polynomial monomial(const Ring& ring, const Monomial& m, const Scalar& c = 1) {
    TermMap t;
    t.emplace(m, c);
    return Polynomial(ring, std::move(t));
  }

  static Polynomial variable(const Ring& ring, std::size_t index) {
    return monomial(ring, Monomial::variable(ring->arity(), index));
  }

  static Polynomial variable(const Ring& ring, const std::string& name) {
    auto it = std::find(ring->variables.begin(), ring->variables.end(), name);
    if (it == ring->variables.end()) throw DomainError("unknown variable '" + name + "'");
    return variable(ring, static_cast<std::size_t>(it - ring->variables.begin()));
  }

  const Ring& ring() const { return ring_; }
  const CoefficientField& field() const { return ring_->field; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

  /// Nonzero constant, i.e. a unit of k[x].
  bool is_unit() const { return !is_zero() && is_constant(); }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  Scalar constant_term() const { return coefficient(Monomial(ring_->arity())); }

  std::uint64_t total_degree() const {
    if (is_zero()) throw ZeroPolynomial("total_degree");
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  /// Indices of variables that occur in some term.
  std::vector<std::size_t> support() const {
    std::vector<bool> seen(ring_->arity(), false);
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < m.arity(); ++i)
        if (m[i]) seen[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i]) out.push_back(i);
    return out;
  }

  Term leading_term(const MonomialOrder& order) const {
    if (is_zero()) throw ZeroPolynomial("leading_term");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
      if (order.less(best->first, it->first)) best = it;
    return {best->first, best->second};
  }

  /// Terms sorted from largest to smallest under `order`.
  std::vector<Term> sorted_terms(const MonomialOrder& order) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.push_back({m, c});
    std::sort(out.begin(), out.end(),
              [&](const Term& a, const Term& b) { return order.less(b.monomial, a.monomial); });
    return out;
  }

  Polynomial scaled(const Scalar& c) const {
    const auto& k = field();
    Scalar cc = k.reduce(c);
    if (cc == 0) return Polynomial(ring_);
    TermMap t;
    for (const auto& [m, a] : terms_) t.emplace_hint(t.end(), m, k.mul(a, cc));
    return Polynomial(ring_, std::move(t), Trusted{});
  }

  Polynomial times_monomial(const Monomial& mono, const Scalar& c = 1) const {
    const auto& k = field();
    Scalar cc = k.reduce(c);
    if (cc == 0) return Polynomial(ring_);
    TermMap t;
    for (const auto& [m, a] : terms_) t.emplace(m * mono, k.mul(a, cc));
    return Polynomial(ring_, std::move(t), Trusted{});
  }

  /// Leading coefficient 1 under `order`; zero stays zero.
  Polynomial monic(const MonomialOrder& order = MonomialOrder::grevlex()) const {
    if (is_zero()) return *this;
    return scaled(field().inv(leading_term(order).coefficient));
  }

  Polynomial pow(unsigned n) const {
    Polynomial result = one(ring_);
    Polynomial base = *this;
    while (n) {
      if (n & 1u) result = result * base;
      n >>= 1u;
      if (n) base = base * base;
    }
    return result;
  }

  Polynomial operator-() const {
    TermMap t;
    for (const auto& [m, a] : terms_) t.emplace_hint(t.end(), m, field().neg(a));
    return Polynomial(ring_, std::move(t), Trusted{});
  }

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) {
    check_same(f, g);
    const auto& k = f.field();
    TermMap t = f.terms_;
    for (const auto& [m, c] : g.terms_) {
      auto [it, inserted] = t.try_emplace(m, c);
      if (!inserted) {
        it->second = k.add(it->second, c);
        if (it->second == 0) t.erase(it);
      }
    }
    return Polynomial(f.ring_, std::move(t), Trusted{});
  }

  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) { return f + (-g); }

  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    check_same(f, g);
    const auto& k = f.field();
    TermMap t;
    for (const auto& [mf, cf] : f.terms_) {
      for (const auto& [mg, cg] : g.terms_) {
        Scalar prod = k.mul(cf, cg);
        auto [it, inserted] = t.try_emplace(mf * mg, prod);
        if (!inserted) it->second = k.add(it->second, prod);
      }
    }
    std::erase_if(t, [](const auto& kv) { return kv.second == 0; });
    return Polynomial(f.ring_, std::move(t), Trusted{});
  }

  Polynomial& operator+=(const Polynomial& g) { return *this = *this + g; }
  Polynomial& operator-=(const Polynomial& g) { return *this = *this - g; }
  Polynomial& operator*=(const Polynomial& g) { return *this = *this * g; }

  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    return same_ring(f.ring_, g.ring_) && f.terms_ == g.terms_;
  }

  /// Canonical text: terms in descending `order`, e.g. `x^2*y - 3/2*z`.
  std::string to_string(const MonomialOrder& order = MonomialOrder::grevlex()) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, raw] : sorted_terms(order)) {
      Scalar c = field().printable(raw);
      bool negative = c < 0;
      if (negative) c = -c;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      std::string mono = monomial_text(m);
      if (mono.empty()) {
        out += c.get_str();
      } else if (c == 1) {
        out += mono;
      } else {
        out += c.get_str() + "*" + mono;
      }
    }
    return out;
  }

  std::string monomial_text(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.arity(); ++i) {
      if (!m[i]) continue;
      if (!s.empty()) s += "*";
      s += ring_->variables[i];
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

  static void check_same(const Polynomial& f, const Polynomial& g) {
    if (!same_ring(f.ring_, g.ring_)) throw RingMismatch();
  }

 private:
  struct Trusted {};
  Polynomial(Ring ring, TermMap terms, Trusted) : ring_(std::move(ring)), terms_(std::move(terms)) {}

  Ring ring_;
  TermMap terms_;
};

inline Polynomial operator*(const Scalar& c, const Polynomial& f) { return f.scaled(c); }

/// q with q*d == f, or nullopt when d does not divide f.
inline std::optional<Polynomial> exact_divide(const Polynomial& f, const Polynomial& d) {
  Polynomial::check_same(f, d);
  if (d.is_zero()) throw ZeroPolynomial("exact_divide");
  const auto order = MonomialOrder::grevlex();
  const auto& k = f.field();
  const Term lead = d.leading_term(order);
  const Scalar lead_inv = k.inv(lead.coefficient);
  Polynomial rest = f;
  Polynomial::TermMap quotient;
  while (!rest.is_zero()) {
    Term t = rest.leading_term(order);
    // In a domain lt(q*d) = lt(q)*lt(d), so a non-divisible leading term is final.
    if (!lead.monomial.divides(t.monomial)) return std::nullopt;
    Monomial m = lead.monomial.quotient_of(t.monomial);
    Scalar c = k.mul(t.coefficient, lead_inv);
    quotient.emplace(m, c);
    rest -= d.times_monomial(m, c);
  }
  return Polynomial(f.ring(), std::move(quotient));
}

inline bool divides(const Polynomial& d, const Polynomial& f) {
  if (d.is_zero()) return f.is_zero();
  return exact_divide(f, d).has_value();
}

/// Rewrites f into `target`, whose variables are `shift` fresh ones followed
/// by the variables of f's ring.
inline Polynomial embed(const Polynomial& f, const Ring& target, std::size_t shift) {
  if (target->arity() != f.ring()->arity() + shift) throw DomainError("embed: arity mismatch");
  Polynomial::TermMap t;
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::uint32_t> e(shift, 0);
    e.insert(e.end(), m.exponents().begin(), m.exponents().end());
    t.emplace(Monomial(std::move(e)), c);
  }
  return Polynomial(target, std::move(t));
}

/// Inverse of embed. Fails if f involves any of the first `shift` variables.
inline std::optional<Polynomial> restrict_to(const Polynomial& f, const Ring& target, std::size_t shift) {
  Polynomial::TermMap t;
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t i = 0; i < shift; ++i)
      if (m[i]) return std::nullopt;
    t.emplace(Monomial(std::vector<std::uint32_t>(m.exponents().begin() + static_cast<long>(shift),
                                                  m.exponents().end())),
              c);
  }
  return Polynomial(target, std::move(t));
}

}  // namespace cmkernel

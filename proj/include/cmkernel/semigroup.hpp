#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cmkernel/errors.hpp"
#include "cmkernel/kq_ring.hpp"
#include "cmkernel/parser.hpp"

namespace cmkernel {

using IntVector = std::vector<long>;

/// Semigroup H ⊂ ℤ^n, either finitely generated or of the form
/// {v in ℕ_0^n : v_i >= 1} ∪ {0}.
class SemigroupDescriptor {
 public:
  struct FinitelyGenerated {
    std::vector<IntVector> generators;
  };
  struct SectorPlusOrigin {
    std::size_t coordinate;  // 0-based
  };

  static SemigroupDescriptor finitely_generated(std::size_t rank, std::vector<IntVector> gens) {
    if (rank == 0) throw DomainError("semigroup rank must be positive");
    if (gens.empty()) throw DomainError("finitely generated semigroup needs generators");
    for (const auto& g : gens) {
      if (g.size() != rank) throw DomainError("generator length does not match rank");
      if (std::all_of(g.begin(), g.end(), [](long v) { return v == 0; }))
        throw DomainError("semigroup generators must be nonzero");
      if (std::any_of(g.begin(), g.end(), [](long v) { return v < 0; }))
        throw DomainError("only generators in ℕ_0^n are supported");
    }
    return SemigroupDescriptor(rank, FinitelyGenerated{std::move(gens)});
  }

  /// `coordinate` is 0-based.
  static SemigroupDescriptor sector_plus_origin(std::size_t rank, std::size_t coordinate) {
    if (rank == 0) throw DomainError("semigroup rank must be positive");
    if (coordinate >= rank) throw DomainError("sector coordinate out of range");
    return SemigroupDescriptor(rank, SectorPlusOrigin{coordinate});
  }

  /// ℕ_0^n, generated by the unit vectors.
  static SemigroupDescriptor orthant(std::size_t rank) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < rank; ++i) {
      IntVector e(rank, 0);
      e[i] = 1;
      gens.push_back(std::move(e));
    }
    return finitely_generated(rank, std::move(gens));
  }

  std::size_t rank() const { return rank_; }
  const std::variant<FinitelyGenerated, SectorPlusOrigin>& form() const { return form_; }

  std::string to_string() const {
    if (auto* s = std::get_if<SectorPlusOrigin>(&form_))
      return "sector(n=" + std::to_string(rank_) + ", i=" + std::to_string(s->coordinate + 1) + ")";
    std::string out = "gens(";
    const auto& gens = std::get<FinitelyGenerated>(form_).generators;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      out += j ? ",[" : "[";
      for (std::size_t i = 0; i < gens[j].size(); ++i) out += (i ? "," : "") + std::to_string(gens[j][i]);
      out += "]";
    }
    return out + ")";
  }

 private:
  SemigroupDescriptor(std::size_t rank, std::variant<FinitelyGenerated, SectorPlusOrigin> form)
      : rank_(rank), form_(std::move(form)) {}

  std::size_t rank_;
  std::variant<FinitelyGenerated, SectorPlusOrigin> form_;
};

namespace detail {

inline bool fg_contains(const std::vector<IntVector>& gens, std::size_t j, IntVector v,
                        std::map<std::pair<std::size_t, IntVector>, bool>& memo) {
  if (std::any_of(v.begin(), v.end(), [](long x) { return x < 0; })) return false;
  if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) return true;
  if (j == gens.size()) return false;
  auto key = std::make_pair(j, v);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  // Largest multiple of gens[j] that fits below v componentwise.
  long most = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (gens[j][i] == 0) continue;
    long q = v[i] / gens[j][i];
    most = most < 0 ? q : std::min(most, q);
  }
  bool found = false;
  for (long c = most; c >= 0 && !found; --c) {
    IntVector rest = v;
    for (std::size_t i = 0; i < v.size(); ++i) rest[i] -= c * gens[j][i];
    found = fg_contains(gens, j + 1, std::move(rest), memo);
  }
  memo.emplace(std::move(key), found);
  return found;
}

}  // namespace detail

inline bool contains(const IntVector& v, const SemigroupDescriptor& H) {
  if (v.size() != H.rank()) throw DomainError("vector length does not match semigroup rank");
  if (auto* s = std::get_if<SemigroupDescriptor::SectorPlusOrigin>(&H.form())) {
    if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) return true;
    if (std::any_of(v.begin(), v.end(), [](long x) { return x < 0; })) return false;
    return v[s->coordinate] >= 1;
  }
  std::map<std::pair<std::size_t, IntVector>, bool> memo;
  return detail::fg_contains(std::get<SemigroupDescriptor::FinitelyGenerated>(H.form()).generators, 0, v, memo);
}

/// Generators of the group ℤH. For a sector on coordinate i these are e_i
/// and e_i + e_j (j != i), which generate all of ℤ^n.
inline std::vector<IntVector> group_generators(const SemigroupDescriptor& H) {
  if (auto* fg = std::get_if<SemigroupDescriptor::FinitelyGenerated>(&H.form())) return fg->generators;
  std::size_t i = std::get<SemigroupDescriptor::SectorPlusOrigin>(H.form()).coordinate;
  std::vector<IntVector> gens;
  IntVector ei(H.rank(), 0);
  ei[i] = 1;
  gens.push_back(ei);
  for (std::size_t j = 0; j < H.rank(); ++j) {
    if (j == i) continue;
    IntVector v = ei;
    v[j] = 1;
    gens.push_back(std::move(v));
  }
  return gens;
}

/// Integer coefficients c with sum c_j * gens_j = target, if any exist.
/// Column-echelon reduction with unimodular column operations.
inline std::optional<std::vector<mpz_class>> lattice_solve(const std::vector<IntVector>& gens,
                                                           const IntVector& target) {
  const std::size_t m = gens.size();
  const std::size_t n = target.size();
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(m));  // a[row][col]
  for (std::size_t c = 0; c < m; ++c) {
    if (gens[c].size() != n) throw DomainError("lattice_solve: dimension mismatch");
    for (std::size_t r = 0; r < n; ++r) a[r][c] = gens[c][r];
  }
  std::vector<std::vector<mpz_class>> u(m, std::vector<mpz_class>(m, 0));
  for (std::size_t c = 0; c < m; ++c) u[c][c] = 1;

  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };
  auto sub_col = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    for (auto& row : a) row[dst] -= q * row[src];
    for (auto& row : u) row[dst] -= q * row[src];
  };

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t col = 0;
  for (std::size_t r = 0; r < n && col < m; ++r) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t c = col; c < m; ++c)
        if (a[r][c] != 0 && (best == m || abs(a[r][c]) < abs(a[r][best]))) best = c;
      if (best == m) break;
      swap_cols(col, best);
      bool done = true;
      for (std::size_t c = col + 1; c < m; ++c) {
        if (a[r][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][c].get_mpz_t(), a[r][col].get_mpz_t());
        sub_col(c, col, q);
        if (a[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][col] != 0) {
      pivots.emplace_back(r, col);
      ++col;
    }
  }

  std::vector<mpz_class> y(m, 0);
  std::size_t next_pivot = 0;
  for (std::size_t r = 0; r < n; ++r) {
    mpz_class rhs = target[r];
    for (std::size_t p = 0; p < next_pivot; ++p) rhs -= a[r][pivots[p].second] * y[pivots[p].second];
    if (next_pivot < pivots.size() && pivots[next_pivot].first == r) {
      const auto c = pivots[next_pivot].second;
      if (rhs % a[r][c] != 0) return std::nullopt;
      y[c] = rhs / a[r][c];
      ++next_pivot;
    } else if (rhs != 0) {
      return std::nullopt;
    }
  }
  std::vector<mpz_class> x(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) x[i] += u[i][j] * y[j];
  return x;
}

inline bool in_group(const IntVector& s, const SemigroupDescriptor& H) {
  return lattice_solve(group_generators(H), s).has_value();
}

struct NormalityCounterexample {
  long m;
  IntVector s;
  /// Integer coefficients of s over group_generators(H).
  std::vector<mpz_class> lattice_coefficients;
};

struct NormalityVerdict {
  bool normal_within_bound;
  std::optional<NormalityCounterexample> counterexample;
  long multiplier_max;
  long box_radius;
};

/// Checks ms in H => s in H for 2 <= m <= multiplier_max and s in ℤH with
/// every coordinate in [-box_radius, box_radius].
inline NormalityVerdict bounded_normality_check(const SemigroupDescriptor& H, long multiplier_max,
                                                long box_radius) {
  if (multiplier_max < 2) throw DomainError("multiplier_max must be at least 2");
  if (box_radius < 1) throw DomainError("box_radius must be at least 1");
  const std::size_t n = H.rank();
  const auto gens = group_generators(H);
  for (long m = 2; m <= multiplier_max; ++m) {
    IntVector s(n, -box_radius);
    for (;;) {
      IntVector ms(n);
      for (std::size_t i = 0; i < n; ++i) ms[i] = m * s[i];
      if (contains(ms, H) && !contains(s, H)) {
        if (auto coeffs = lattice_solve(gens, s))
          return {false, NormalityCounterexample{m, s, std::move(*coeffs)}, multiplier_max, box_radius};
      }
      std::size_t i = n;
      while (i > 0 && s[i - 1] == box_radius) s[--i] = -box_radius;
      if (i == 0) break;
      ++s[i - 1];
    }
  }
  return {true, std::nullopt, multiplier_max, box_radius};
}

inline bool counterexample_replays(const NormalityCounterexample& cex, const SemigroupDescriptor& H) {
  IntVector ms(cex.s.size());
  for (std::size_t i = 0; i < ms.size(); ++i) ms[i] = cex.m * cex.s[i];
  if (!contains(ms, H) || contains(cex.s, H)) return false;
  const auto gens = group_generators(H);
  if (cex.lattice_coefficients.size() != gens.size()) return false;
  for (std::size_t i = 0; i < cex.s.size(); ++i) {
    mpz_class sum = 0;
    for (std::size_t j = 0; j < gens.size(); ++j) sum += cex.lattice_coefficients[j] * gens[j][i];
    if (sum != cex.s[i]) return false;
  }
  return true;
}

/// Variable names used for the ambient ring of a bridged semigroup.
inline std::vector<std::string> bridge_variable_names(std::size_t n) {
  if (n <= 3) {
    std::vector<std::string> xyz{"x", "y", "z"};
    return {xyz.begin(), xyz.begin() + static_cast<long>(n)};
  }
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

/// k[H] = k + x_i*k[x_1..x_n] for a sector semigroup; nullopt otherwise.
inline std::optional<KQRing> monomial_bridge(const SemigroupDescriptor& H,
                                             CoefficientField field = CoefficientField::rationals()) {
  auto* s = std::get_if<SemigroupDescriptor::SectorPlusOrigin>(&H.form());
  if (!s) return std::nullopt;
  Ring S = make_ring(bridge_variable_names(H.rank()), field);
  return make_kq_ring(S, {Polynomial::variable(S, s->coordinate)});
}

namespace detail {

inline long parse_int(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw ParseError("expected integer");
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t, &used);
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + t + "'");
  }
  if (used != t.size()) throw ParseError("bad integer '" + t + "'");
  return v;
}

}  // namespace detail

/// `sector(n=3, i=1)` (i is 1-based) or `gens([2],[3])`.
inline SemigroupDescriptor parse_semigroup(std::string_view text) {
  std::string s = detail::trim(text);
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') throw ParseError("semigroup must look like sector(...) or gens(...)");
  std::string head = detail::trim(s.substr(0, open));
  std::string body = s.substr(open + 1, s.size() - open - 2);
  try {
    if (head == "sector") {
      long n = -1, i = -1;
      for (const auto& part : detail::split_top_level(body)) {
        auto eq = part.find('=');
        if (eq == std::string::npos) throw ParseError("sector arguments must be n=... and i=...");
        std::string key = detail::trim(part.substr(0, eq));
        long val = detail::parse_int(part.substr(eq + 1));
        if (key == "n") n = val;
        else if (key == "i") i = val;
        else throw ParseError("unknown sector argument '" + key + "'");
      }
      if (n < 1 || i < 1 || i > n) throw ParseError("sector needs 1 <= i <= n");
      return SemigroupDescriptor::sector_plus_origin(static_cast<std::size_t>(n), static_cast<std::size_t>(i - 1));
    }
    if (head == "gens") {
      std::vector<IntVector> gens;
      for (const auto& part : detail::split_top_level(body)) {
        if (part.size() < 2 || part.front() != '[' || part.back() != ']') throw ParseError("generator must be [a,b,...]");
        IntVector v;
        for (const auto& c : detail::split_top_level(part.substr(1, part.size() - 2))) v.push_back(detail::parse_int(c));
        gens.push_back(std::move(v));
      }
      if (gens.empty()) throw ParseError("gens() needs at least one generator");
      const std::size_t dim = gens.front().size();
      return SemigroupDescriptor::finitely_generated(dim, std::move(gens));
    }
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown semigroup form '" + head + "'");
}

}  // namespace cmkernel

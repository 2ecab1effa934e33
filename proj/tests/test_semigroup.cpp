#include <gtest/gtest.h>

#include "cmkernel/cmkernel.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cmkernel;

namespace {

const auto SECTOR3 = SemigroupDescriptor::sector_plus_origin(3, 0);
const auto TWO_THREE = SemigroupDescriptor::finitely_generated(1, {{2}, {3}});

}  // namespace

TEST(Contains, SectorExamples) {
  EXPECT_TRUE(contains({2, 1, 5}, SECTOR3));
  EXPECT_FALSE(contains({0, 3, 3}, SECTOR3));
  EXPECT_TRUE(contains({0, 0, 0}, SECTOR3));
  EXPECT_TRUE(contains({1, 0, 0}, SECTOR3));
  EXPECT_FALSE(contains({1, -1, 0}, SECTOR3));
  EXPECT_THROW(contains({1, 1}, SECTOR3), DomainError);
}

TEST(Contains, NumericalSemigroup) {
  EXPECT_TRUE(contains({7}, TWO_THREE));
  EXPECT_FALSE(contains({1}, TWO_THREE));
  EXPECT_TRUE(contains({0}, TWO_THREE));
  EXPECT_FALSE(contains({-2}, TWO_THREE));
  for (long v = -3; v <= 60; ++v) EXPECT_EQ(contains({v}, TWO_THREE), oracle::numerical_semigroup_contains(v, {2, 3})) << v;
}

TEST(Contains, AgreesWithBruteForce) {
  gen::Source src(71);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long> g;
    for (int i = 0; i < 3; ++i) g.push_back(src.integer(3, 11));
    std::vector<IntVector> gens;
    for (long x : g) gens.push_back({x});
    auto H = SemigroupDescriptor::finitely_generated(1, gens);
    for (long v = 0; v <= 50; ++v) EXPECT_EQ(contains({v}, H), oracle::numerical_semigroup_contains(v, g)) << v;
  }
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<IntVector> gens;
    for (int i = 0; i < 3; ++i) {
      IntVector v{src.integer(0, 3), src.integer(0, 3)};
      if (v[0] == 0 && v[1] == 0) v[0] = 1;
      gens.push_back(v);
    }
    auto H = SemigroupDescriptor::finitely_generated(2, gens);
    for (long a = 0; a <= 7; ++a)
      for (long b = 0; b <= 7; ++b) EXPECT_EQ(contains({a, b}, H), oracle::affine_semigroup_contains({a, b}, gens));
  }
}

TEST(Descriptor, Validation) {
  EXPECT_THROW(SemigroupDescriptor::finitely_generated(1, {{0}}), DomainError);
  EXPECT_THROW(SemigroupDescriptor::finitely_generated(2, {{1}}), DomainError);
  EXPECT_THROW(SemigroupDescriptor::finitely_generated(1, {}), DomainError);
  EXPECT_THROW(SemigroupDescriptor::sector_plus_origin(3, 3), DomainError);
}

TEST(Normality, SectorWithinBounds) {
  auto v = bounded_normality_check(SECTOR3, 5, 6);
  EXPECT_TRUE(v.normal_within_bound);
  EXPECT_FALSE(v.counterexample);
  EXPECT_EQ(v.multiplier_max, 5);
  EXPECT_EQ(v.box_radius, 6);
}

TEST(Normality, TwoThreeCounterexample) {
  auto v = bounded_normality_check(TWO_THREE, 5, 6);
  ASSERT_FALSE(v.normal_within_bound);
  ASSERT_TRUE(v.counterexample);
  EXPECT_EQ(v.counterexample->m, 2);
  EXPECT_EQ(v.counterexample->s, IntVector{1});
  EXPECT_TRUE(counterexample_replays(*v.counterexample, TWO_THREE));
  EXPECT_TRUE(oracle::numerical_semigroup_contains(2, {2, 3}));
  EXPECT_FALSE(oracle::numerical_semigroup_contains(1, {2, 3}));
}

TEST(Normality, Orthant) {
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_TRUE(bounded_normality_check(SemigroupDescriptor::orthant(n), 4, 3).normal_within_bound);
}

TEST(Normality, BoundsValidated) {
  EXPECT_THROW(bounded_normality_check(SECTOR3, 1, 3), DomainError);
  EXPECT_THROW(bounded_normality_check(SECTOR3, 3, 0), DomainError);
}

TEST(Normality, CounterexamplesReplay) {
  gen::Source src(72);
  int found = 0;
  for (int trial = 0; trial < 40; ++trial) {
    // Two independent generators give a free, hence normal, semigroup; use
    // three in rank 2 or a numerical semigroup instead.
    std::vector<IntVector> gens;
    if (trial % 2) {
      for (int i = 0; i < 3; ++i) gens.push_back({src.integer(1, 4), src.integer(0, 3)});
    } else {
      gens = {{src.integer(2, 5), 0}, {src.integer(2, 7), 0}, {0, 1}};
    }
    auto H = SemigroupDescriptor::finitely_generated(2, gens);
    auto v = bounded_normality_check(H, 3, 4);
    if (!v.counterexample) continue;
    ++found;
    EXPECT_TRUE(counterexample_replays(*v.counterexample, H));
    IntVector ms;
    for (long x : v.counterexample->s) ms.push_back(v.counterexample->m * x);
    EXPECT_TRUE(oracle::affine_semigroup_contains(ms, gens));
    EXPECT_FALSE(oracle::affine_semigroup_contains(v.counterexample->s, gens));
  }
  EXPECT_GT(found, 3);
}

TEST(Lattice, GroupOfSectorIsEverything) {
  auto gens = group_generators(SECTOR3);
  gen::Source src(73);
  for (int trial = 0; trial < 50; ++trial) {
    IntVector s{src.integer(-9, 9), src.integer(-9, 9), src.integer(-9, 9)};
    auto c = lattice_solve(gens, s);
    ASSERT_TRUE(c.has_value());
    for (std::size_t i = 0; i < 3; ++i) {
      mpz_class sum = 0;
      for (std::size_t j = 0; j < gens.size(); ++j) sum += (*c)[j] * mpz_class(gens[j][i]);
      EXPECT_EQ(sum, mpz_class(s[i]));
    }
  }
  for (const auto& g : gens) EXPECT_TRUE(contains(g, SECTOR3));
}

TEST(Lattice, ProperSublattice) {
  auto H = SemigroupDescriptor::finitely_generated(2, {{2, 0}, {0, 2}, {1, 1}});
  EXPECT_TRUE(in_group({3, 1}, H));
  EXPECT_FALSE(in_group({1, 0}, H));
  auto even = SemigroupDescriptor::finitely_generated(1, {{4}, {6}});
  EXPECT_TRUE(in_group({-2}, even));
  EXPECT_FALSE(in_group({3}, even));
}

TEST(SemigroupProperties, ClosedUnderAddition) {
  gen::Source src(74);
  for (int trial = 0; trial < 300; ++trial) {
    IntVector u{src.integer(0, 4), src.integer(0, 4), src.integer(0, 4)};
    IntVector v{src.integer(0, 4), src.integer(0, 4), src.integer(0, 4)};
    if (!contains(u, SECTOR3) || !contains(v, SECTOR3)) continue;
    IntVector w{u[0] + v[0], u[1] + v[1], u[2] + v[2]};
    EXPECT_TRUE(contains(w, SECTOR3));
  }
  for (long a = 0; a <= 20; ++a)
    for (long b = 0; b <= 20; ++b)
      if (contains({a}, TWO_THREE) && contains({b}, TWO_THREE)) {
        EXPECT_TRUE(contains({a + b}, TWO_THREE));
      }
}

TEST(Bridge, Examples) {
  auto R = monomial_bridge(SECTOR3);
  ASSERT_TRUE(R);
  EXPECT_EQ(R->to_string(), "k + ideal(x) in QQ[x,y,z]");
  auto R2 = monomial_bridge(SemigroupDescriptor::sector_plus_origin(2, 0));
  ASSERT_TRUE(R2);
  EXPECT_EQ(R2->to_string(), "k + ideal(x) in QQ[x,y]");
  EXPECT_FALSE(monomial_bridge(TWO_THREE));
  EXPECT_EQ(monomial_bridge(SemigroupDescriptor::sector_plus_origin(4, 2))->to_string(),
            "k + ideal(x3) in QQ[x1,x2,x3,x4]");
}

TEST(Bridge, MonomialBasisLiesInSemigroup) {
  // k-basis of k + xS: 1 and the monomials divisible by x.
  auto R = *monomial_bridge(SECTOR3);
  for (const auto& m : oracle::monomials_of_degree_at_most(3, 6)) {
    auto p = Polynomial::monomial(R.ambient(), m);
    IntVector v(m.exponents().begin(), m.exponents().end());
    EXPECT_EQ(R.contains(p), contains(v, SECTOR3)) << p.to_string();
  }
}

TEST(Parse, Forms) {
  auto s = parse_semigroup("sector(n=3, i=1)");
  EXPECT_EQ(s.to_string(), "sector(n=3, i=1)");
  EXPECT_TRUE(contains({1, 0, 0}, s));
  auto g = parse_semigroup("gens([2],[3])");
  EXPECT_EQ(g.to_string(), "gens([2],[3])");
  EXPECT_TRUE(contains({5}, g));
  EXPECT_THROW(parse_semigroup("sector(n=3, i=4)"), ParseError);
  EXPECT_THROW(parse_semigroup("gens([0])"), ParseError);
  EXPECT_THROW(parse_semigroup("cone(1)"), ParseError);
  EXPECT_THROW(parse_semigroup("gens([1],[1,2])"), ParseError);
}

#include <gtest/gtest.h>

#include "cmkernel/cmkernel.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cmkernel;

namespace {

const Ring X = make_ring({"x"});
const Ring XY = make_ring({"x", "y"});
const Ring XYZ = make_ring({"x", "y", "z"});

Polynomial P(const Ring& r, const char* s) { return parse_polynomial(s, r); }
std::vector<Polynomial> L(const Ring& r, const char* s) { return parse_polynomial_list(s, r); }

KQRing kq(const Ring& r, const char* q) { return make_kq_ring(r, L(r, q)); }

}  // namespace

TEST(KQRing, AlgebraGeneratorsNoetherianCase) {
  auto R = kq(XY, "x, y^2");
  auto g = R.monomial_algebra_generators(6);
  EXPECT_EQ(oracle::sorted_by_text(g.generators), oracle::sorted_by_text(L(XY, "x, x*y, y^2, y^3")));
  EXPECT_FALSE(g.truncated);
  EXPECT_TRUE(R.contains(P(XY, "3 + x*y^5")));
  EXPECT_FALSE(R.contains(P(XY, "y")));
  EXPECT_TRUE(KQRing::conductor_is_maximal());
}

TEST(KQRing, AlgebraGeneratorsNonNoetherianCase) {
  auto R = kq(XY, "x");
  auto g = R.monomial_algebra_generators(5);
  EXPECT_EQ(g.generators, L(XY, "x, x*y, x*y^2, x*y^3, x*y^4"));
  EXPECT_TRUE(g.truncated);
  EXPECT_EQ(R.monomial_algebra_generators(8).generators.size(), 8u);
}

TEST(KQRing, Validation) {
  EXPECT_THROW(kq(XY, "1"), UnitIdeal);
  EXPECT_THROW(kq(XY, "x, 1 + x"), UnitIdeal);
  EXPECT_THROW(make_kq_ring(XY, {}), DomainError);
  EXPECT_THROW(make_kq_ring(XY, {P(XYZ, "x")}), RingMismatch);
  EXPECT_EQ(kq(XYZ, "x").to_string(), "k + ideal(x) in QQ[x,y,z]");
}

TEST(KQMembership, Examples) {
  auto R = kq(XYZ, "x");
  KQIdeal J(R, L(XYZ, "x*y"));
  auto a = kq_ideal_membership(P(XYZ, "x*y*z"), J);
  EXPECT_FALSE(a.member);
  EXPECT_EQ(a.trace.remainder, P(XYZ, "x*y*z"));

  auto b = kq_ideal_membership(P(XYZ, "x^2*y*z"), J);
  EXPECT_TRUE(b.member);
  EXPECT_EQ(b.recombined(J.generators()), P(XYZ, "x^2*y*z"));

  auto c = kq_ideal_membership(P(XYZ, "x*y"), J);
  EXPECT_TRUE(c.member);
  ASSERT_EQ(c.scalars.size(), 1u);
  EXPECT_EQ(c.scalars[0], 1);
  EXPECT_EQ(c.recombined(J.generators()), P(XYZ, "x*y"));
}

TEST(KQMembership, GeneratorsMustLieInConductor) {
  auto R = kq(XYZ, "x");
  EXPECT_THROW(KQIdeal(R, L(XYZ, "y")), DomainError);
}

TEST(KQMembership, ScalarPartMatters) {
  // The coefficients of xy and xz come from the k-span part, x^2 z from (xy, xz)Q.
  auto R = kq(XYZ, "x");
  KQIdeal J(R, L(XYZ, "x*y, x*z"));
  auto m = kq_ideal_membership(P(XYZ, "2*x*y + x^2*z - 1/3*x*z"), J);
  ASSERT_TRUE(m.member);
  EXPECT_EQ(m.scalars, (std::vector<Scalar>{2, Scalar(-1, 3)}));
  EXPECT_EQ(m.recombined(J.generators()), P(XYZ, "2*x*y + x^2*z - 1/3*x*z"));
  EXPECT_FALSE(kq_ideal_membership(P(XYZ, "y*z"), J).member);
}

TEST(RegularSequence, FlagshipWitness) {
  auto R = kq(XYZ, "x");
  auto seq = L(XYZ, "x*y, x*z");
  auto v = kq_regular_sequence(seq, R, 4);
  ASSERT_FALSE(v.regular);
  ASSERT_TRUE(v.failure_witness);
  EXPECT_EQ(v.failure_witness->index, 2u);
  EXPECT_EQ(v.failure_witness->r, P(XYZ, "x*y*z"));
  EXPECT_TRUE(witness_replays(*v.failure_witness, seq, R));
  EXPECT_FALSE(v.conditional());
  // Independent check of the witness identity: xyz * xz = xy * (x z^2).
  EXPECT_EQ(P(XYZ, "x*y*z") * P(XYZ, "x*z"), P(XYZ, "x*y") * P(XYZ, "x*z^2"));
  EXPECT_TRUE(R.in_conductor(P(XYZ, "x*z^2")));
}

TEST(RegularSequence, SingleElementIsRegular) {
  auto R = kq(XY, "x");
  auto v = kq_regular_sequence(L(XY, "x"), R, 4);
  EXPECT_TRUE(v.regular);
  EXPECT_TRUE(v.conditional());
  EXPECT_EQ(v.search_bound, 4u);
}

TEST(RegularSequence, RepeatedElement) {
  auto R = kq(XYZ, "x");
  auto seq = L(XYZ, "x*y, x*y");
  auto v = kq_regular_sequence(seq, R, 4);
  ASSERT_FALSE(v.regular);
  EXPECT_EQ(v.failure_witness->r, P(XYZ, "x"));
  EXPECT_TRUE(witness_replays(*v.failure_witness, seq, R));
}

TEST(RegularSequence, ElementOutsideConductor) {
  auto R = kq(XYZ, "x");
  EXPECT_THROW(kq_regular_sequence(L(XYZ, "x*y, y"), R, 4), DomainError);
  EXPECT_THROW(kq_regular_sequence({}, R, 4), DomainError);
}

TEST(StrongParameter, TwoGenerated) {
  auto a = strong_param_pair_two_generated(kq(XY, "x, y^2"));
  EXPECT_TRUE(a.strong);
  EXPECT_FALSE(a.h2.vanishes);
  auto b = strong_param_pair_two_generated(kq(XYZ, "x*y, x*z"));
  EXPECT_TRUE(b.strong);
  auto c = strong_param_pair_two_generated(kq(X, "x, x + x^2"));
  EXPECT_FALSE(c.strong);
  EXPECT_TRUE(c.h2.vanishes);
  EXPECT_THROW(strong_param_pair_two_generated(kq(XYZ, "x")), DomainError);
}

TEST(Principal, FlagshipIsNotCM) {
  auto R = kq(XYZ, "x");
  auto rep = principal_obstruction(R, std::nullopt, default_degree_bound(R));
  EXPECT_EQ(rep.verdict, CMVerdict::NOT_CM);
  ASSERT_TRUE(rep.sequence);
  EXPECT_EQ(rep.sequence->first, P(XYZ, "x*y"));
  EXPECT_EQ(rep.sequence->second, P(XYZ, "x*z"));
  ASSERT_TRUE(rep.proregularity);
  EXPECT_EQ(rep.proregularity->reason, ProregularityReason::ConductorTransfer);
  ASSERT_TRUE(rep.regularity && rep.regularity->failure_witness);
  EXPECT_LE(rep.regularity->failure_witness->r.total_degree(), 4u);
  EXPECT_TRUE(witness_replays(*rep.regularity->failure_witness, {rep.sequence->first, rep.sequence->second}, R));
  EXPECT_EQ(rep.recorded_dimension, 3u);
  ASSERT_TRUE(rep.h2);
  EXPECT_FALSE(rep.h2->vanishes);
}

TEST(Principal, PlaneCaseFindsNoObstruction) {
  auto R = kq(XY, "x");
  auto rep = principal_obstruction(R, std::nullopt, default_degree_bound(R));
  EXPECT_EQ(rep.verdict, CMVerdict::NO_OBSTRUCTION_FOUND);
  EXPECT_FALSE(rep.sequence);
  bool mentions_extension = std::any_of(rep.narrative.begin(), rep.narrative.end(),
                                        [](const std::string& s) { return s.find("A[z]") != std::string::npos; });
  EXPECT_TRUE(mentions_extension);
}

TEST(Principal, SquareConductorWithAux) {
  auto R = kq(XYZ, "x^2");
  auto rep = principal_obstruction(R, std::make_pair(P(XYZ, "y"), P(XYZ, "z")), default_degree_bound(R));
  EXPECT_EQ(rep.verdict, CMVerdict::NOT_CM);
  EXPECT_EQ(rep.sequence->first, P(XYZ, "x^2*y"));
  EXPECT_EQ(rep.sequence->second, P(XYZ, "x^2*z"));
  EXPECT_TRUE(witness_replays(*rep.regularity->failure_witness, {rep.sequence->first, rep.sequence->second}, R));
  EXPECT_THROW(principal_obstruction(R, std::make_pair(P(XYZ, "x*y"), P(XYZ, "z")), 7), DomainError);
  EXPECT_TRUE(is_regular_sequence(L(XYZ, "x^2, y, z")));
}

TEST(Principal, IntersectionIdentity) {
  auto meet = ideal_intersection(IdealHandle(XYZ, L(XYZ, "x")), IdealHandle(XYZ, L(XYZ, "y, z")));
  EXPECT_TRUE(ideals_equal(meet, IdealHandle(XYZ, L(XYZ, "x*y, x*z"))));
}

TEST(Report, TwoGeneratedExamples) {
  for (const char* q : {"x, y^2"}) {
    auto R = kq(XY, q);
    EXPECT_EQ(cm_obstruction_report(R, default_degree_bound(R)).verdict, CMVerdict::NOT_CM) << q;
  }
  for (const char* q : {"x, y", "x, y*z", "x*y, x*z"}) {
    auto R = kq(XYZ, q);
    auto rep = cm_obstruction_report(R, default_degree_bound(R));
    EXPECT_EQ(rep.verdict, CMVerdict::NOT_CM) << q;
    EXPECT_EQ(rep.proregularity->reason, ProregularityReason::ConductorTransfer);
    EXPECT_FALSE(rep.h2->vanishes);
  }
  auto R = kq(X, "x, x^2");
  auto rep = cm_obstruction_report(R, default_degree_bound(R));
  EXPECT_EQ(rep.verdict, CMVerdict::NO_OBSTRUCTION_FOUND);
  EXPECT_TRUE(rep.h2->vanishes);
  EXPECT_EQ(rep.h2->gcd_d, P(X, "x"));
}

TEST(Report, ThreeGeneratorsUnsupported) {
  auto R = kq(XYZ, "x, y, z");
  EXPECT_THROW(cm_obstruction_report(R, 5), DomainError);
}

TEST(Report, JsonFields) {
  auto R = kq(XYZ, "x");
  auto j = to_json(cm_obstruction_report(R, default_degree_bound(R)));
  for (const char* key : {"ring", "verdict", "sequence", "h2_verdict", "regularity_witness", "citations", "bounds"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["verdict"], "NOT_CM");
  EXPECT_EQ(j["sequence"], Json::array({"x*y", "x*z"}));
  EXPECT_EQ(j["proregularity"]["reason"], "ConductorTransfer");
}

TEST(HeightConsistency, Examples) {
  EXPECT_EQ(height_consistency_check(P(XY, "x"), P(XY, "y^2")), true);
  auto v = h2_vanishes(P(XYZ, "x*y"), P(XYZ, "x*z"));
  EXPECT_EQ(height_consistency_check(v), true);
  EXPECT_TRUE(ideals_equal(std::get<HeightTwoWitness>(v.evidence).saturated, IdealHandle(XYZ, L(XYZ, "y, z"))));
  EXPECT_FALSE(height_consistency_check(P(X, "x"), P(X, "x + x^2")).has_value());
}

TEST(KQProperties, MembershipDecompositionAndContainment) {
  gen::Source src(61);
  auto R = kq(XYZ, "x");
  int members = 0;
  for (int trial = 0; trial < 80; ++trial) {
    std::vector<Polynomial> gens{P(XYZ, "x") * src.nonzero(XYZ, 1, 2)};
    if (src.coin()) gens.push_back(P(XYZ, "x") * src.nonzero(XYZ, 1, 2));
    KQIdeal J(R, gens);
    // Half the targets are built to be members.
    Polynomial h = src.coin() ? gens[0].scaled(src.coefficient()) + gens.back() * P(XYZ, "x") * src.polynomial(XYZ, 1, 2)
                              : P(XYZ, "x") * src.nonzero(XYZ, 2, 3);
    auto m = kq_ideal_membership(h, J);
    if (!m.member) continue;
    ++members;
    EXPECT_EQ(m.recombined(J.generators()), h);
    EXPECT_TRUE(ideal_membership(h, IdealHandle(XYZ, gens)).member);
    EXPECT_TRUE(oracle::member_with_bounded_cofactors(h, gens, 3));
  }
  EXPECT_GT(members, 20);
}

TEST(KQProperties, StrongParameterMatchesH2) {
  gen::Source src(62);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = src.in_maximal_ideal(XYZ, 2, 2), g = src.in_maximal_ideal(XYZ, 2, 2);
    if (IdealHandle(XYZ, {f, g}).is_unit()) continue;
    auto R = make_kq_ring(XYZ, {f, g});
    EXPECT_EQ(strong_param_pair_two_generated(R).strong, !h2_vanishes(f, g).vanishes);
  }
}

TEST(KQProperties, WitnessesReplay) {
  gen::Source src(63);
  auto R = kq(XYZ, "x");
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Polynomial> seq{Polynomial::monomial(XYZ, Monomial({1, 0, 0}) * src.monomial(3, 2)),
                                Polynomial::monomial(XYZ, Monomial({1, 0, 0}) * src.monomial(3, 2))};
    auto v = kq_regular_sequence(seq, R, 4);
    if (!v.regular) {
      EXPECT_TRUE(witness_replays(*v.failure_witness, seq, R)) << ideal_text(seq);
    }
  }
}

TEST(KQProperties, NotCMIsMonotoneInBound) {
  for (const char* q : {"x", "x^2"}) {
    auto R = kq(XYZ, q);
    bool seen = false;
    for (unsigned bound = 1; bound <= 8; ++bound) {
      auto rep = cm_obstruction_report(R, bound);
      if (seen) {
        EXPECT_EQ(rep.verdict, CMVerdict::NOT_CM) << q << " bound " << bound;
      }
      seen = seen || rep.verdict == CMVerdict::NOT_CM;
    }
    EXPECT_TRUE(seen) << q;
  }
}

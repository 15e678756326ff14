#include "dkg/audit.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace dkg;

namespace {

ExtReal q(long n, long d = 1) { return ExtReal(frac(n, d)); }
const ExtReal eps = ExtReal::eps();

}  // namespace

TEST(CaseIds, RoundTrip) {
  EXPECT_EQ(audited_cases().size(), 11u);
  for (CaseId c : audited_cases()) EXPECT_EQ(parse_case(to_string(c)), c);
  EXPECT_EQ(parse_case("I−3"), CaseId::Im3);
  EXPECT_THROW(parse_case("K+1"), std::invalid_argument);
}

TEST(Audit, IPlus1AtR2Point) {
  AuditReport r = audit_case(CaseId::Ip1, q(1, 4), q(4, 5));
  EXPECT_EQ(r.region, Region::R2);
  EXPECT_EQ(r.sigma, q(3, 4));
  EXPECT_EQ(r.required.left.a, ExtFrac(q(9, 20)));
  EXPECT_EQ(r.required.right.a, ExtFrac(q(3, 4) - eps * Rational(2)));
  ASSERT_TRUE(r.proven) << r.note;
  EXPECT_TRUE(r.derivation->uses(Theorem::Sobolev));
  EXPECT_TRUE(verify(*r.derivation));
}

TEST(Audit, JPlus1OnLowerEnvelopeUsesBie3) {
  for (auto s : {q(1, 8), q(1, 5), q(1, 3)}) {
    const ExtReal r = q(1, 2) + s * Rational(frac(1, 3)) + ExtReal::rho();
    AuditReport rep = audit_case(CaseId::Jp1, s, r);
    EXPECT_EQ(parameter_region(rep.region), Region::R1);
    ASSERT_TRUE(rep.proven) << s.str() << ": " << rep.note;
    EXPECT_TRUE(rep.derivation->uses_bie(3)) << s.str();
  }
}

TEST(Audit, JMinus2InR4UsesWaveSobolev) {
  AuditReport rep = audit_case(CaseId::Jm2, q(3, 4), q(13, 10));
  EXPECT_EQ(parameter_region(rep.region), Region::R4);
  ASSERT_TRUE(rep.proven) << rep.note;
  EXPECT_TRUE(rep.derivation->uses(Theorem::Wave));
}

TEST(Audit, IMinus3FollowsBySymmetry) {
  AuditReport rep = audit_case(CaseId::Im3, q(1, 4), q(4, 5));
  ASSERT_TRUE(rep.proven);
  EXPECT_EQ(rep.derivation->rule, Rule::Symmetry);
}

TEST(Audit, InadmissibleRejected) {
  EXPECT_THROW(audit_case(CaseId::Ip1, q(1, 10), q(1, 2)), std::invalid_argument);
  EXPECT_THROW(audit_case(CaseId::Jp2, q(1, 4), q(2)), std::invalid_argument);
}

TEST(Audit, JsonReport) {
  auto j = audit_case(CaseId::Jm1, q(1, 4), q(4, 5)).to_json();
  EXPECT_EQ(j["case"], "J-1");
  EXPECT_EQ(j["verdict"], "proven");
  EXPECT_TRUE(j.contains("derivation"));
  EXPECT_EQ(j["sigma"], "3/4");
}

TEST(AuditGrid, CoversEveryLabelWithAdmissiblePoints) {
  auto g = audit_grid(200);
  EXPECT_GE(g.size(), 200u);
  std::set<Region> seen;
  for (const auto& p : g) {
    auto v = evaluate_region(p.s, p.r);
    ASSERT_TRUE(v.admissible) << to_string(p.s) << "," << to_string(p.r);
    seen.insert(v.label);
  }
  for (Region r : {Region::R1, Region::R2, Region::R3, Region::R4, Region::BD, Region::AD, Region::DF,
                   Region::Exterior})
    EXPECT_TRUE(seen.count(r)) << to_string(r);
}

TEST(AuditGrid, EveryProvenVerdictCarriesAVerifiedTree) {
  size_t proven = 0, total = 0;
  for (const auto& p : audit_grid(200))
    for (CaseId c : audited_cases()) {
      AuditReport rep = audit_case(c, p.s, p.r);
      ++total;
      if (!rep.proven) {
        // The one known gap: J+3 in the exterior strip close to r = s.
        EXPECT_EQ(c, CaseId::Jp3) << to_string(p.s) << "," << to_string(p.r);
        EXPECT_EQ(rep.region, Region::Exterior);
        EXPECT_FALSE(rep.note.empty());
        continue;
      }
      ++proven;
      ASSERT_TRUE(rep.derivation);
      EXPECT_TRUE(verify(*rep.derivation));
      EXPECT_TRUE(implies(rep.derivation->fact, rep.required));
    }
  EXPECT_GT(proven, total * 99 / 100);
}

TEST(AuditGrid, JPlus3ExteriorGapIsGenuine) {
  // With σ ∈ (1/2, 1) the Sobolev law needs r ≥ s + 1/4 + ε here; neither base
  // theorem closes the required embedding directly, so the audit reports it.
  AuditReport rep = audit_case(CaseId::Jp3, q(2), q(2));
  EXPECT_FALSE(rep.proven);
  EXPECT_NE(rep.note.find("does not close"), std::string::npos);
  EXPECT_TRUE(audit_case(CaseId::Jp3, q(2), q(5, 2)).proven);
}

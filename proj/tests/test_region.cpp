#include "dkg/region.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace dkg;

namespace {

ExtReal q(long n, long d = 1) { return ExtReal(frac(n, d)); }
const ExtReal eps = ExtReal::eps();

bool has(const std::vector<int>& v, int k) { return std::find(v.begin(), v.end(), k) != v.end(); }

}  // namespace

TEST(Admissible, Oracles) {
  EXPECT_TRUE(admissible(q(1, 10), q(6, 10)).admissible);
  EXPECT_TRUE(admissible(q(6, 10), q(16, 10)).admissible);  // r = 1 + s, s > 1/2
  EXPECT_FALSE(admissible(q(1, 4), q(5, 4)).admissible);   // r = 1 + s, s ≤ 1/2
  auto v = admissible(q(1, 10), q(1, 2));
  EXPECT_FALSE(v.admissible);
  ASSERT_FALSE(v.failing_constraints.empty());
  EXPECT_NE(v.failing_constraints[0].find("1/2 + s/3"), std::string::npos);
  EXPECT_FALSE(admissible(q(0), q(1, 2)).admissible);
  EXPECT_FALSE(admissible(q(-1, 4), q(1, 2)).admissible);
}

TEST(Classify, Oracles) {
  EXPECT_EQ(classify(q(1, 4), q(4, 5)), Region::R2);
  EXPECT_EQ(classify(q(1, 2), q(5, 4)), Region::BD);
  EXPECT_EQ(parameter_region(classify(q(1, 2), q(1))), Region::R3);
  EXPECT_EQ(classify(q(2), q(5, 2)), Region::Exterior);
  EXPECT_EQ(classify(q(1, 10), q(1, 2)), Region::Inadmissible);
}

TEST(Classify, InfinitesimalOffsetsPickTheOpenSide) {
  // Just above the lower envelope r = 1/2 + s/3 at small s lies in R1.
  EXPECT_EQ(parameter_region(classify(q(1, 8), q(1, 2) + q(1, 24) + ExtReal::rho())), Region::R1);
  EXPECT_EQ(classify(q(1, 8), q(1, 2) + q(1, 24)), Region::Inadmissible);
}

TEST(ChooseParameters, SigmaTable) {
  auto [s1, r1] = choose_parameters(q(1, 4), q(4, 5));
  EXPECT_EQ(s1, q(3, 4));
  EXPECT_EQ(r1, q(1, 2) + eps);
  EXPECT_EQ(choose_parameters(q(1, 2), q(5, 4)).first, q(1) - eps);
  auto [s3, r3] = choose_parameters(q(2), q(5, 2));
  EXPECT_GT(s3, q(1, 2));
  EXPECT_LT(s3, q(1));
  EXPECT_THROW(choose_parameters(q(1, 10), q(1, 2)), std::invalid_argument);
}

TEST(ChooseParameters, SigmaAlwaysInOpenUnitHalfInterval) {
  for (int i = 1; i <= 40; ++i)
    for (int j = 0; j <= 60; ++j) {
      const ExtReal s = q(i, 16), r = q(j, 16);
      auto v = evaluate_region(s, r);
      if (!v.admissible) continue;
      EXPECT_GT(v.sigma, q(1, 2)) << s.str() << "," << r.str();
      EXPECT_LT(v.sigma, q(1)) << s.str() << "," << r.str();
      EXPECT_GT(v.rho, q(1, 2));
      EXPECT_NE(v.label, Region::Inadmissible);
    }
}

TEST(Vertices, LieOnTheBoundary) {
  for (const Vertex& v : vertex_table()) {
    auto verdict = admissible(v.s, v.r);
    if (v.name == 'C' || v.name == 'E' || v.name == 'A' || v.name == 'B') continue;
    EXPECT_TRUE(verdict.admissible) << v.name;
  }
}

TEST(NecessaryConditions, Instantiations) {
  const ExtReal sigma = q(3, 4), rho = q(1, 2) + eps;
  // KG: cond1 ⇔ r ≤ 1/2 + 2s.
  EXPECT_FALSE(has(necessary_conditions(kg_instantiation(q(1, 4), q(1), sigma, rho)), 1));
  EXPECT_TRUE(has(necessary_conditions(kg_instantiation(q(1, 4), q(11, 10), sigma, rho)), 1));
  // Dirac-D: cond1 ⇔ r ≥ 1/2, cond5 ⇔ r ≥ s.
  EXPECT_TRUE(has(necessary_conditions(diracd_instantiation(q(1, 4), q(2, 5), sigma, rho)), 1));
  EXPECT_FALSE(has(necessary_conditions(diracd_instantiation(q(1, 4), q(3, 5), sigma, rho)), 1));
  EXPECT_TRUE(has(necessary_conditions(diracd_instantiation(q(2), q(3, 2), sigma, rho)), 5));
  EXPECT_FALSE(has(necessary_conditions(diracd_instantiation(q(2), q(5, 2), sigma, rho)), 5));

  auto zero = necessary_conditions(ExponentTuple{});
  EXPECT_TRUE(has(zero, 1));
  for (int k : {4, 5, 6}) EXPECT_FALSE(has(zero, k));
  EXPECT_FALSE(condition_text(1).empty());
}

TEST(NecessaryConditions, AdmissiblePointsPassBothInstantiations) {
  for (int i = 1; i <= 24; ++i)
    for (int j = 0; j <= 48; ++j) {
      const ExtReal s = q(i, 8), r = q(j, 8);
      auto v = evaluate_region(s, r);
      if (!v.admissible) continue;
      EXPECT_TRUE(necessary_conditions(kg_instantiation(s, r, v.sigma, v.rho)).empty()) << s.str() << "," << r.str();
      EXPECT_TRUE(necessary_conditions(diracd_instantiation(s, r, v.sigma, v.rho)).empty())
          << s.str() << "," << r.str();
    }
}

TEST(Polygons, CsvHasEveryRegion) {
  const std::string csv = region_polygons_csv();
  for (const char* name : {"R1", "R2", "R3", "R4", "Exterior"}) EXPECT_NE(csv.find(name), std::string::npos) << name;
  EXPECT_EQ(csv.rfind("region,index,s,r", 0), 0u);
}

#include "dkg/nullform.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dkg;

TEST(DerivedQuantities, CollinearOnCone) {
  FrequencyPoint p;
  p.xi = Vec3(2, 0, 0);
  p.eta = Vec3(1, 0, 0);
  p.tau = 2;
  p.lambda = 1;
  auto d = derived_quantities(p);
  EXPECT_DOUBLE_EQ(d.kappa_plus, 2);
  EXPECT_DOUBLE_EQ(d.kappa_minus, 0);
  EXPECT_DOUBLE_EQ(d.gamma, 0);  // τ = |ξ|
}

TEST(DerivedQuantities, BoundsAtSampledPoints) {
  FrequencySampler s(4);
  for (int i = 0; i < 20000; ++i) {
    FrequencyPoint p = s.next();
    auto d = derived_quantities(p);
    const double m = std::min(p.eta.norm(), (p.eta - p.xi).norm());
    const double tol = 1e-12 * (p.eta.norm() + p.xi.norm() + std::abs(p.tau) + std::abs(p.lambda));
    EXPECT_GE(d.kappa_plus, -tol);
    EXPECT_GE(d.kappa_minus, -tol);
    EXPECT_LE(d.kappa_plus, 2 * m + tol);
    EXPECT_LE(d.kappa_minus, 2 * m + tol);
    EXPECT_LE(d.kappa_plus, std::abs(d.gamma) + std::abs(d.Theta) + std::abs(d.sigma_plus) + tol);
    EXPECT_LE(d.kappa_minus, std::abs(d.gamma) + std::abs(d.Theta) + std::abs(d.sigma_minus) + tol);
  }
}

TEST(ExactBounds, NoViolations) {
  auto r = check_exact_bounds(200000, 1);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.adversarial, 100u);
  EXPECT_GE(r.worst_slack, -1e-12);
  EXPECT_EQ(check_exact_bounds(0, 1).violations, 0u);
}

TEST(Sampler, Deterministic) {
  FrequencySampler a(9), b(9), c(10);
  for (int i = 0; i < 100; ++i) {
    auto x = a.next(), y = b.next(), z = c.next();
    EXPECT_EQ(x.xi, y.xi);
    EXPECT_EQ(x.tau, y.tau);
    EXPECT_NE(x.xi, z.xi);
  }
}

TEST(Comparability, OrthogonalConfigurationInBracket) {
  // η ⊥ η−ξ with |η| = |η−ξ| = 1: θ₊ = π/2 between η and η−ξ... ratio finite.
  FrequencyPoint p;
  p.eta = Vec3(1, 0, 0);
  p.xi = Vec3(1, -1, 0);  // η − ξ = (0, 1, 0)
  p.tau = std::sqrt(2.0);
  p.lambda = 1;
  auto d = derived_quantities(p);
  ASSERT_FALSE(std::isnan(d.theta_plus));
  const double ratio = d.theta_plus * d.theta_plus * 1.0 / (std::sqrt(2.0) * d.kappa_plus);
  EXPECT_GT(ratio, 1.0 / 16);
  EXPECT_LT(ratio, 16);
}

TEST(Comparability, CollinearPointIsDegenerate) {
  FrequencyPoint p;
  p.eta = Vec3(2, 0, 0);
  p.xi = Vec3(1, 0, 0);
  auto d = derived_quantities(p);
  EXPECT_NEAR(d.theta_plus, 0, 1e-15);
  EXPECT_NEAR(d.kappa_plus, 0, 1e-15);
}

TEST(Comparability, BracketAndSeedStability) {
  std::vector<std::vector<RatioStats>> runs;
  for (uint64_t seed : {1, 2, 3}) runs.push_back(check_comparability(30000, seed));
  for (size_t k = 0; k < runs[0].size(); ++k) {
    for (const auto& r : runs) {
      EXPECT_TRUE(r[k].in_bracket()) << r[k].relation << " [" << r[k].min << ", " << r[k].max << "]";
      EXPECT_GT(r[k].used, 1000u);
    }
    EXPECT_NEAR(runs[1][k].max / runs[0][k].max, 1, 0.1);
    EXPECT_NEAR(runs[2][k].min / runs[0][k].min, 1, 0.1);
  }
}

TEST(NullSymbol, ConstantBoundedAndAlignedVanishes) {
  auto a = check_null_symbol_bound(20000, 1), b = check_null_symbol_bound(20000, 2);
  EXPECT_LE(a.constant, 4);
  EXPECT_LT(a.aligned_max, 1e-12);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_GT(a.per_pair[i][j], 0);
  EXPECT_NEAR(a.constant / b.constant, 1, 0.01);
}

TEST(Csv, HasHeaderAndRows) {
  auto csv = to_csv(check_exact_bounds(100, 1), check_comparability(1000, 1), check_null_symbol_bound(100, 1), 1);
  EXPECT_EQ(csv.rfind("relation,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

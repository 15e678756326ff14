#include "dkg/bie.hpp"
#include "dkg/embedding.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dkg;

namespace {

ExtFrac q(long n, long d = 1) { return ExtFrac(frac(n, d)); }
const ExtFrac eps(ExtReal::eps());
const ExtFrac d_half = q(1, 2) + eps;  // 1/2+

}  // namespace

TEST(SobolevProduct, Oracles) {
  EXPECT_TRUE(check_sobolev_product(q(1) + eps, 0, 0, d_half));
  EXPECT_TRUE(check_sobolev_product(q(1, 2), q(1, 2), 0, d_half));
  EXPECT_FALSE(check_sobolev_product(q(1, 4), q(1, 4), 0, d_half));
  // Sum exactly 1 requires s1, s2 < 1.
  EXPECT_FALSE(check_sobolev_product(q(1), 0, 0, d_half));
  EXPECT_THROW(check_sobolev_product(1, 1, 1, q(1, 2)), std::invalid_argument);
}

TEST(WaveProduct, Oracles) {
  EXPECT_TRUE(check_wave_product(1, 0, 1, q(3, 5), q(3, 5), 0));
  EXPECT_FALSE(check_wave_product(q(3, 2), 0, 0, q(3, 5), q(3, 5), 0));
  EXPECT_TRUE(check_wave_product(q(1, 2) + eps, q(1, 2) - eps, q(1, 2), q(1, 2) + eps, 0, 0));
  EXPECT_FALSE(check_wave_product(1, 0, 1, q(1, 5), q(1, 5), 0));  // d-sum below 1/2
  EXPECT_TRUE(check_wave_product(1, 0, 1, q(1, 4), q(1, 4), 0));    // d-sum = 1/2, no d_j = 1/2
  EXPECT_FALSE(check_wave_product(1, 0, 1, q(1, 2), 0, 0));          // d-sum = 1/2 with d_1 = 1/2
  EXPECT_FALSE(check_wave_product(3, -1, 0, 1, 1, 1));               // t2 + t3 < 0
}

TEST(Special, PatternMatch) {
  EXPECT_TRUE(check_special(make_fact(q(1, 2) + eps, d_half, eps, d_half, eps - q(1), q(1, 2))));
  EXPECT_FALSE(check_special(make_fact(q(1, 2) + eps, d_half, eps, d_half, eps - q(1), q(1, 2) + eps)));
  const ExtFrac e2 = eps * q(2);
  EXPECT_TRUE(check_special(make_fact(q(1, 2) + e2, d_half, e2, d_half, e2 - q(1), q(1, 2))));
  EXPECT_FALSE(check_special(make_fact(q(1, 2), d_half, 0, d_half, q(-1), q(1, 2))));
}

TEST(Dualize, Oracles) {
  const ExtFrac s = q(1, 4), r = q(4, 5), sigma = q(3, 4);
  Fact f = make_fact(q(1) + s - r, 0, q(1, 2) + s - eps * q(3), sigma, 0, -(q(1, 2) + eps));
  Fact g = dualize(f, 1);
  EXPECT_EQ(g, make_fact(0, q(1, 2) + eps, q(1, 2) + s - eps * q(3), sigma, -(q(1) + s - r), 0));
  EXPECT_EQ(dualize(dualize(f, 1), 1), f);
  EXPECT_EQ(dualize(dualize(f, 2), 2), f);
  Fact l2 = make_fact(q(1, 2), q(1, 3), q(1, 4), q(1, 5), 0, 0);
  EXPECT_TRUE(dualize(l2, 2).right.is_l2());
}

TEST(Interpolate, Oracles) {
  Fact f0 = make_fact(q(1) + eps, d_half, 0, d_half, 0, 0), f1 = make_fact(0, d_half, q(1) + eps, d_half, 0, 0);
  const ExtFrac theta = q(1, 3);
  Fact m = interpolate(f0, f1, theta);
  EXPECT_EQ(m.left.a, (q(1) + eps) * (q(1) - theta));
  EXPECT_EQ(m.right.a, (q(1) + eps) * theta);
  EXPECT_EQ(interpolate(f0, f1, 0), f0);
  EXPECT_EQ(interpolate(f0, f1, 1), f1);
  EXPECT_THROW(interpolate(f0, f1, q(3, 2)), std::invalid_argument);
  EXPECT_THROW(interpolate(f0, f1, -eps), std::invalid_argument);
}

TEST(Interpolate, WindowWithInfinitesimalTheta) {
  // θ = 2(s−δ)/(1−4δ) from endpoints at 0 and (1−4δ)/2 on the first slot.
  const ExtFrac del(ExtReal::delta()), s = q(1, 8);
  Fact f0 = make_fact(0, d_half, q(1), d_half, 0, 0);
  Fact f1 = make_fact((q(1) - del * q(4)) / q(2), d_half, q(1), d_half, 0, 0);
  Fact goal = make_fact(s - del, d_half, q(1), d_half, 0, 0);
  auto w = interpolation_window(f0, f1, goal, true);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->lo, q(2) * (s - del) / (q(1) - del * q(4)));
}

TEST(Implies, MonotonicityProperty) {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int i = 0; i < 300; ++i) {
    Fact f = make_fact(q(d(gen), 4), q(d(gen), 4), q(d(gen), 4), q(d(gen), 4), q(d(gen), 4), q(d(gen), 4));
    EXPECT_TRUE(implies(f, f));
    Fact g = f;
    g.left.a = g.left.a + q(1, 8);
    g.target.b = g.target.b - q(1, 8);
    EXPECT_TRUE(implies(f, g));
    EXPECT_FALSE(implies(g, f));
    EXPECT_EQ(swap_factors(swap_factors(f)), f);
  }
}

TEST(ProveBy, DerivationsVerify) {
  auto d = prove_by(Theorem::Sobolev, make_fact(q(9, 20), q(3, 4), q(3, 4) - eps * q(2), q(3, 4), 0, 0));
  ASSERT_TRUE(d);
  EXPECT_TRUE(verify(*d));
  EXPECT_FALSE(prove_by(Theorem::Sobolev, make_fact(q(1, 8), q(3, 4), q(1, 8), q(3, 4), 0, 0)));
}

TEST(Verify, RejectsTamperedTrees) {
  auto d = prove_by(Theorem::Sobolev, make_fact(q(1) + eps, d_half, 0, d_half, 0, 0));
  ASSERT_TRUE(d);
  Derivation bad = *d;
  bad.fact.left.a = 0;  // no longer a Sobolev instance
  std::string why;
  EXPECT_FALSE(verify(bad, &why));
  EXPECT_FALSE(why.empty());
  Derivation w = weaken(make_fact(q(2), d_half, 0, d_half, 0, 0), *d);
  EXPECT_TRUE(verify(w));
  Derivation wrong = weaken(make_fact(q(1, 2), d_half, 0, d_half, 0, 0), *d);
  EXPECT_FALSE(verify(wrong));
}

TEST(Bie, TableOracles) {
  EXPECT_TRUE(bie_table(1, {{"a", q(1)}, {"alpha", q(1, 2)}, {"c", q(1, 2)}, {"d", d_half}}));
  EXPECT_FALSE(bie_table(7, {{"a", q(1, 2)}, {"beta", q(1, 2)}, {"d", d_half}}));
  EXPECT_THROW(derive_bie(11, {}), std::invalid_argument);
  EXPECT_THROW(derive_bie(0, {}), std::invalid_argument);
}

TEST(Bie, Bie8UsesTheSpecialEstimate) {
  auto r = derive_bie(8, {{"a", q(1, 2) + eps}, {"beta", q(1, 2) + eps}, {"gamma", q(1, 2)}});
  ASSERT_TRUE(r.holds);
  ASSERT_TRUE(r.derived) << r.note;
  EXPECT_TRUE(r.derivation->uses(Theorem::Special));
  EXPECT_TRUE(verify(*r.derivation));
}

TEST(Bie, EveryTableHasAVerifiedDerivation) {
  const std::map<int, BieParams> ok = {
      {1, {{"a", q(1)}, {"alpha", q(1, 2)}, {"c", q(1, 2)}}},
      {kBie1e, {{"a", q(1)}, {"alpha", q(1, 2)}, {"c", q(3, 4)}}},
      {2, {{"a", q(5, 4)}, {"alpha", q(1, 2)}, {"beta", q(1, 2)}, {"gamma", q(1, 4)}}},
      {3, {{"a", q(1, 3)}, {"b", q(2, 3)}, {"beta", q(1, 4)}, {"c", q(1, 3)}}},
      {4, {{"beta", q(1, 4)}, {"c", q(1, 3)}}},
      {5, {{"a", q(1, 2)}, {"alpha", q(1, 2)}, {"b", q(1, 2)}, {"c", q(3, 4)}}},
      {6, {{"a", q(1, 2)}, {"b", q(3, 4)}, {"beta", q(3, 4)}}},
      {7, {{"a", q(3, 4)}, {"beta", q(1, 2)}}},
      {8, {{"a", q(1, 4)}, {"beta", q(1, 4)}, {"gamma", q(1, 4)}}},
      {9, {{"beta", q(1, 4)}, {"c", q(7, 8)}}},
  };
  for (const auto& [k, p] : ok) {
    auto r = derive_bie(k, p);
    EXPECT_TRUE(r.holds) << bie_name(k);
    ASSERT_TRUE(r.derived) << bie_name(k) << ": " << r.note;
    std::string why;
    EXPECT_TRUE(verify(*r.derivation, &why)) << bie_name(k) << ": " << why;
    EXPECT_TRUE(implies(r.derivation->fact, bie_conclusion(k, [&] {
                          BieParams full = p;
                          full.emplace("d", d_half);
                          if (k == 8) full.emplace("e", eps);
                          return full;
                        }())));
  }
}

TEST(Bie, TableFailuresAreNotDerived) {
  auto r = derive_bie(7, {{"a", q(1, 2)}, {"beta", q(1, 2)}});
  EXPECT_FALSE(r.holds);
  EXPECT_FALSE(r.derived);
  EXPECT_FALSE(derive_bie(1, {{"a", q(1, 2)}, {"alpha", q(0)}, {"c", q(1)}}).holds);
}

TEST(Bie, BoundaryNudgesFlipTheTable) {
  // bie7: a + β > 1 is strict; tiny excess flips it.
  EXPECT_TRUE(bie_table(7, {{"a", q(1, 2)}, {"beta", q(1, 2) + eps}, {"d", d_half}}));
  // bie1: 3·min(a/2, α) + c > 3/2.
  EXPECT_FALSE(bie_table(1, {{"a", q(1)}, {"alpha", q(1, 3)}, {"c", q(1, 2)}, {"d", d_half}}));
  EXPECT_TRUE(bie_table(1, {{"a", q(1)}, {"alpha", q(1, 3)}, {"c", q(1, 2) + eps}, {"d", d_half}}));
}

TEST(Bie, ExplicitThetaWindows) {
  for (auto s3 : {q(1, 8), q(1, 4), q(3, 8)}) {
    auto w = sobolev_case2_window(s3);
    ASSERT_TRUE(w);
    EXPECT_TRUE(w->contains(q(2) * s3));
  }
  auto w9 = bie9_inner_window(default_slack(), d_half);
  ASSERT_TRUE(w9);
  const ExtFrac sl = default_slack();
  EXPECT_EQ(w9->lo, q(2) * sl / (q(1) + q(2) * sl));
}

TEST(ApplyBie, MatchesAndWeakens) {
  Fact goal = bie_conclusion(7, {{"a", q(3, 4)}, {"beta", q(1, 2)}, {"d", d_half}});
  goal.left.a = q(1);  // weaker query
  auto d = apply_bie(7, goal);
  ASSERT_TRUE(d);
  EXPECT_TRUE(verify(*d));
  EXPECT_TRUE(d->uses_bie(7));
  EXPECT_FALSE(apply_bie(7, make_fact(q(1, 2), d_half, q(1, 2), q(1, 2), 0, 0)));
}

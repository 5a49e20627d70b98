#include <gtest/gtest.h>

#include "toricbott/counterexample.hpp"

using namespace toricbott;

TEST(Scenario, DegreeEight) {
  const auto s = scenario(8);
  EXPECT_EQ(s.genus, 21);
  EXPECT_EQ(s.deg_L, 16);
  EXPECT_EQ(s.rr_lower_bound, 4);
  EXPECT_TRUE(s.bott_fails);
}

TEST(Scenario, DegreeSeven) {
  const auto s = scenario(7);
  EXPECT_EQ(s.genus, 15);
  EXPECT_EQ(s.rr_lower_bound, 0);
  EXPECT_FALSE(s.bott_fails);
}

TEST(Scenario, DegreeOne) {
  const auto s = scenario(1);
  EXPECT_EQ(s.genus, 0);
  EXPECT_EQ(s.deg_wedge2_conormal, 0);
  EXPECT_EQ(s.rr_lower_bound, -3);
  EXPECT_FALSE(s.bott_fails);
}

TEST(Scenario, ClosedForms) {
  for (std::int64_t d = 1; d <= 200; ++d) {
    const auto s = scenario(d);
    EXPECT_EQ(s.e_invariant, d * d + d);
    EXPECT_EQ(s.deg_wedge2_conormal, d - d * d);
    EXPECT_EQ(s.degree_A, d * (d + 1));
    EXPECT_EQ(s.deg_L, 2 * d);
    EXPECT_EQ(2 * s.rr_lower_bound, d * d - 7 * d);
    EXPECT_EQ(s.bott_fails, s.rr_lower_bound > 0);
    // Genus from adjunction on the plane: 2g - 2 = d(d - 3).
    EXPECT_EQ(2 * s.genus - 2, d * (d - 3));
    EXPECT_TRUE(relative_ample_check(d));
    EXPECT_TRUE(riemann_roch_consistency(d));
  }
}

TEST(Scenario, MinimalFailingDegree) {
  EXPECT_EQ(minimal_failing_degree(), 8);
  const auto rows = scan(1, 10);
  ASSERT_EQ(rows.size(), 10u);
  for (const auto& s : rows) EXPECT_EQ(s.bott_fails, s.d >= 8);
}

TEST(Scenario, DomainErrors) {
  for (std::int64_t bad : {0, -3}) {
    try {
      scenario(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DomainError);
    }
  }
  EXPECT_THROW(scenario(kMaxScenarioDegree + 1), Error);
  EXPECT_THROW(scan(5, 4), Error);
  EXPECT_THROW(minimal_failing_degree(7), Error);
}

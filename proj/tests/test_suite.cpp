#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

#include "toricbott/suite.hpp"

using namespace toricbott;

TEST(Suite, FanFamily) {
  const auto fans = suite::suite_fans();
  ASSERT_EQ(fans.size(), 9u);
  EXPECT_EQ(fans.back().fan.ray_count(), 6u);
  EXPECT_EQ(suite::blown_up_plane(0).ray_count(), 3u);
}

TEST(Suite, ParallelForVisitsEachIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  suite::detail::parallel_for(hits.size(), 4, [&](std::size_t i, unsigned) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Suite, ParallelForPropagatesErrors) {
  EXPECT_THROW(suite::detail::parallel_for(50, 3,
                                           [](std::size_t i, unsigned) {
                                             if (i == 17) throw std::runtime_error("boom");
                                           }),
               std::runtime_error);
}

TEST(Suite, SweepCriteriaFailOnAnyViolation) {
  suite::SweepStats s;
  s.feasible = 10;
  EXPECT_TRUE(suite::sweep_criterion(s).pass);
  EXPECT_TRUE(suite::certificate_criterion(s).pass);
  s.direct_violations = 1;
  EXPECT_FALSE(suite::sweep_criterion(s).pass);
  s.direct_violations = 0;
  s.strata_mismatches = 1;
  EXPECT_FALSE(suite::certificate_criterion(s).pass);
  suite::SweepStats empty;
  EXPECT_FALSE(suite::sweep_criterion(empty).pass);
}

TEST(Suite, FastCriteriaPass) {
  EXPECT_TRUE(suite::negative_control().pass);
  EXPECT_TRUE(suite::counterexample_arithmetic().pass);
  suite::Options opt;
  opt.euler_samples = 30;
  opt.method_samples = 20;
  EXPECT_TRUE(suite::euler_additivity(opt).pass);
  EXPECT_TRUE(suite::method_agreement(opt).pass);
  EXPECT_TRUE(suite::hodge_count(opt).pass);
}

#include <gtest/gtest.h>

#include "ekrforge/properties.hpp"

using namespace ekrforge;

TEST(Sampling, SaturatedAndIntersecting) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_saturated_family(9, 4, rng);
    EXPECT_TRUE(is_intersecting(f));
    EXPECT_TRUE(is_saturated(f));
    const auto g = random_saturated_family_near_cover(9, 4, rng);
    EXPECT_TRUE(is_intersecting(g));
    EXPECT_TRUE(is_saturated(g));
  }
}

TEST(Sampling, SameSeedSameFamily) {
  std::mt19937_64 a(42), b(42);
  EXPECT_EQ(random_saturated_family(9, 4, a), random_saturated_family(9, 4, b));
}

TEST(Sampling, RejectionRespectsMinimumTau) {
  std::mt19937_64 rng(2);
  for (auto sampler : {Sampler::Uniform, Sampler::NearCover}) {
    const auto s = random_saturated_family_with_tau(9, 4, 3, rng, sampler);
    EXPECT_GE(s.tau, 3);
    EXPECT_EQ(s.tau, tau(s.family));
  }
}

TEST(RandomSuites, TraceBounds) {
  const auto c = trace_random_suite(9, 4, 10, 1);
  EXPECT_TRUE(c.passed()) << c.to_json().dump();
  EXPECT_GT(c.params["checks"]["3.4"].get<std::size_t>(), 0U);
}

TEST(RandomSuites, CoversIntersect) {
  const auto c = covers_intersecting_suite(8, 4, 20, 1);
  EXPECT_TRUE(c.passed()) << c.to_json().dump();
  EXPECT_THROW(covers_intersecting_suite(7, 4, 1, 1), std::invalid_argument);
}

TEST(RandomSuites, Classification) {
  const auto c = classification_suite(9, 4, 10, 1);
  EXPECT_TRUE(c.passed()) << c.to_json().dump();
  EXPECT_THROW(classification_suite(8, 4, 1, 1), std::invalid_argument);
}

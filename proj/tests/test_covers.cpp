#include <gtest/gtest.h>

#include <random>

#include "ekrforge/constructions.hpp"
#include "ekrforge/covers.hpp"
#include "oracles.hpp"

using namespace ekrforge;

namespace {

std::vector<Subset> sets(std::initializer_list<std::initializer_list<int>> lists) {
  std::vector<Subset> out;
  for (auto l : lists) out.push_back(Subset::of(l));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mask> masks(const UniformFamily& f) {
  std::vector<Mask> out;
  for (Subset s : f) out.push_back(s.bits());
  return out;
}

}  // namespace

TEST(Covers, PairsOfR) {
  EXPECT_EQ(covers(build_R(5), 2).members, sets({{1, 2}, {1, 3}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {3, 5}}));
}

TEST(Covers, PairsOfS) {
  EXPECT_EQ(covers(build_S(6), 2).members, sets({{1, 2}, {3, 4}, {2, 4}, {1, 6}, {1, 4}, {2, 5}}));
}

TEST(Covers, StarHasSingleApexCover) {
  EXPECT_EQ(covers(full_star(7, 3), 1).members, sets({{1}}));
}

TEST(Covers, CompleteAndSound) {
  const auto g = build_G(9, 4);
  for (int ell = 1; ell <= 4; ++ell) {
    const auto c = covers(g, ell);
    std::size_t expected = 0;
    for (const auto& t : oracle::ksets(9, ell)) {
      const Mask tb = oracle::bits(t);
      bool hits = true;
      for (Subset s : g) hits = hits && (s.bits() & tb);
      expected += hits ? 1 : 0;
    }
    EXPECT_EQ(c.size(), expected) << ell;
    for (Subset t : c.members) EXPECT_TRUE(is_cover(t, g));
    EXPECT_TRUE(std::is_sorted(c.members.begin(), c.members.end()));
  }
  EXPECT_THROW(covers(g, 0), std::invalid_argument);
  EXPECT_THROW(covers(g, 10), std::invalid_argument);
}

TEST(Tau, Examples) {
  EXPECT_EQ(tau(build_G(9, 4)), 3);
  EXPECT_EQ(tau(full_star(7, 3)), 1);
  EXPECT_EQ(tau(build_S(6)), 2);
  EXPECT_EQ(tau(build_K34(4)), 2);
  EXPECT_THROW(tau(UniformFamily(5, 2)), std::invalid_argument);
}

TEST(Tau, AgreesWithExhaustiveOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 5);
    const int k = 2 + static_cast<int>(rng() % 3);
    std::vector<Subset> m;
    for (Subset s : all_subsets_of_size(n, k))
      if (rng() % 4 == 0) m.push_back(s);
    if (m.empty()) continue;
    const UniformFamily f(n, k, m);
    EXPECT_EQ(tau(f), oracle::tau(masks(f), n)) << "n=" << n << " k=" << k;
  }
}

TEST(Tau, OfGridOfG) {
  for (int k = 3; k <= 6; ++k)
    for (int n = 2 * k; n <= 2 * k + 4; ++n) EXPECT_EQ(tau(build_G(n, k)), 3) << n << " " << k;
}

TEST(Saturate, StarIsAlreadyMaximal) {
  const auto star = full_star(7, 3);
  EXPECT_EQ(saturate(star), star);
  EXPECT_TRUE(is_saturated(star));
  // no k-set avoiding the apex meets every member
  for (Subset s : all_subsets_of_size(7, 3))
    if (!s.contains(1)) {
      EXPECT_FALSE(is_cover(s, star));
    }
}

TEST(Saturate, IdempotentAndMonotone) {
  const auto s = UniformFamily::from_lists(7, 3, {{1, 2, 3}, {1, 4, 5}, {2, 4, 6}});
  const auto t = saturate(s);
  EXPECT_TRUE(is_intersecting(t));
  EXPECT_TRUE(is_saturated(t));
  EXPECT_EQ(saturate(t), t);
  EXPECT_GE(tau(t), tau(s));
  for (Subset x : s) EXPECT_TRUE(t.contains(x));
}

TEST(Saturate, RejectsNonIntersecting) {
  EXPECT_THROW(saturate(UniformFamily::from_lists(6, 3, {{1, 2, 3}, {4, 5, 6}})), std::invalid_argument);
}

TEST(Saturated, Examples) {
  EXPECT_TRUE(is_saturated(build_G(9, 4)));
  EXPECT_FALSE(is_saturated(UniformFamily::from_lists(7, 3, {{1, 2, 3}})));
}

TEST(Saturate, InOrderStaysIntersecting) {
  std::mt19937_64 rng(3);
  auto order = all_subsets_of_size(9, 4);
  for (int t = 0; t < 20; ++t) {
    std::shuffle(order.begin(), order.end(), rng);
    const auto f = saturate_in_order(UniformFamily(9, 4), order);
    EXPECT_TRUE(is_intersecting(f));
    EXPECT_TRUE(is_saturated(f));
  }
}

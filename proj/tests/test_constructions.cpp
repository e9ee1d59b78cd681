#include <gtest/gtest.h>

#include "ekrforge/constructions.hpp"
#include "oracles.hpp"

using namespace ekrforge;

TEST(Patterns, Members) {
  EXPECT_EQ(build_S(6), UniformFamily::from_lists(6, 3, {{1, 2, 3}, {1, 4, 5}, {2, 4, 6}}));
  EXPECT_EQ(build_R(5), UniformFamily::from_lists(5, 3, {{1, 2, 3}, {1, 4, 5}, {2, 3, 5}}));
  EXPECT_EQ(build_K34(4).size(), 4U);
  EXPECT_THROW(build_S(5), std::invalid_argument);
  EXPECT_THROW(build_R(4), std::invalid_argument);
}

TEST(Star, SizeAndApex) {
  const auto s = full_star(8, 3, 5);
  EXPECT_EQ(s.size(), oracle::choose(7, 2));
  for (Subset x : s) EXPECT_TRUE(x.contains(5));
  EXPECT_THROW(full_star(8, 3, 9), std::invalid_argument);
}

TEST(G, KnownSizes) {
  EXPECT_EQ(build_G(6, 3).size(), 10U);
  EXPECT_EQ(build_G(8, 4).size(), 35U);
  EXPECT_EQ(build_G(9, 4).size(), 48U);
  EXPECT_EQ(build_G(11, 5).size(), 199U);
  EXPECT_EQ(build_G(13, 6).size(), 778U);
}

TEST(G, MatchesClosedFormAndDirectCount) {
  for (int k = 3; k <= 5; ++k)
    for (int n = 2 * k; n <= 2 * k + 4; ++n) {
      const auto g = build_G(n, k);
      EXPECT_EQ(BigInt(g.size()), g_size_formula(n, k)) << n << " " << k;
      // count k-sets through 1 meeting [2,k+1], {2} u [k+2,2k] and {3} u [k+2,2k]
      const Mask b1 = ((std::uint64_t{1} << k) - 1) << 1;
      const Mask tail = ((std::uint64_t{1} << (k - 1)) - 1) << (k + 1);
      const Mask b2 = tail | 2, b3 = tail | 4;
      std::size_t direct = 3;
      for (const auto& s : oracle::ksets(n, k)) {
        const Mask m = oracle::bits(s);
        if ((m & 1) && (m & b1) && (m & b2) && (m & b3)) ++direct;
      }
      EXPECT_EQ(g.size(), direct) << n << " " << k;
      EXPECT_TRUE(is_intersecting(g));
    }
}

TEST(G, CoverNumberIsThree) {
  EXPECT_EQ(tau(build_G(9, 4)), 3);
  EXPECT_EQ(tau(build_G(10, 5)), 3);
  EXPECT_THROW(build_G(7, 4), std::invalid_argument);
  EXPECT_THROW(build_G(6, 2), std::invalid_argument);
}

TEST(FH, SingleTriple) {
  const auto h = UniformFamily::from_lists(6, 3, {{2, 3, 4}});
  const auto f = build_F_H(h);
  // {2,3,4} plus every triple through 1 that meets {2,3,4}
  EXPECT_EQ(f.size(), 1 + oracle::choose(5, 2) - oracle::choose(2, 2));
  EXPECT_EQ(tau(f), 2);
  EXPECT_TRUE(is_intersecting(f));
}

TEST(FH, CompleteTripleSystemOnFourPoints) {
  const auto h = UniformFamily::from_lists(7, 3, {{2, 3, 4}, {2, 3, 5}, {2, 4, 5}, {3, 4, 5}});
  const auto f = build_F_H(h);
  EXPECT_EQ(f.size(), 4 + oracle::choose(4, 2));
  EXPECT_EQ(tau(f), 3);
  // the covers of H below size 3 are the six pairs of {2..5}, and hitting all
  // of them takes three points
  std::vector<Mask> small;
  for (Subset t : all_covers(h))
    if (t.size() < 3) small.push_back(t.bits());
  EXPECT_EQ(small.size(), 6U);
  EXPECT_EQ(oracle::tau(small, 7), 3);
  EXPECT_THROW(build_F_H(UniformFamily::from_lists(7, 3, {{1, 2, 3}})), std::invalid_argument);
  EXPECT_THROW(build_F_H(UniformFamily::from_lists(7, 3, {{2, 3, 4}, {5, 6, 7}})), std::invalid_argument);
}

TEST(Lex, Order) {
  EXPECT_TRUE(lex_precedes(Subset::of({1, 5, 6}), Subset::of({2, 3, 4})));
  EXPECT_FALSE(lex_precedes(Subset::of({2, 3, 4}), Subset::of({1, 5, 6})));
  EXPECT_FALSE(lex_precedes(Subset::of({1, 2}), Subset::of({1, 2})));
  const auto order = lex_order(6, 3);
  ASSERT_EQ(order.size(), 20U);
  // the selector-based reference already emits lex order
  const auto ref = oracle::ksets(6, 3);
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(order[i].bits(), oracle::bits(ref[i]));
  for (std::size_t i = 0; i + 1 < order.size(); ++i) EXPECT_TRUE(lex_precedes(order[i], order[i + 1]));
}

TEST(Lex, Family) {
  EXPECT_EQ(lex_family(6, 3, 4), UniformFamily::from_lists(6, 3, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 2, 6}}));
  EXPECT_TRUE(lex_family(6, 3, 0).empty());
  EXPECT_EQ(lex_family(6, 3, 20).size(), 20U);
  EXPECT_THROW(lex_family(6, 3, 21), std::invalid_argument);
  // the first binom(n-1,k-1) sets form the star at 1
  EXPECT_EQ(lex_family(7, 3, 15), full_star(7, 3));
}

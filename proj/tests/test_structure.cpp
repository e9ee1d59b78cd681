#include <gtest/gtest.h>

#include <random>

#include "ekrforge/constructions.hpp"
#include "ekrforge/structure.hpp"

using namespace ekrforge;

namespace {

std::vector<Subset> pairs(std::initializer_list<std::initializer_list<int>> lists) {
  std::vector<Subset> out;
  for (auto l : lists) out.push_back(Subset::of(l));
  return out;
}

bool is_edge(const DisjointnessGraph& g, Subset a, Subset b) {
  const auto i = g.index_of(a), j = g.index_of(b);
  const std::pair<std::size_t, std::size_t> e{std::min(i, j), std::max(i, j)};
  return std::find(g.edges.begin(), g.edges.end(), e) != g.edges.end();
}

}  // namespace

TEST(Copies, PatternsContainThemselves) {
  EXPECT_TRUE(contains_copy(build_S(6), Pattern::S));
  EXPECT_TRUE(contains_copy(build_R(6), Pattern::R));
  EXPECT_FALSE(contains_copy(build_S(6), Pattern::R));
  EXPECT_FALSE(contains_copy(build_R(6), Pattern::S));
  EXPECT_FALSE(contains_copy(build_K34(6), Pattern::R));
}

TEST(Copies, AddingTwoThreeFourToSGivesR) {
  const auto t = pairs({{1, 2, 3}, {2, 3, 4}, {1, 4, 5}});
  EXPECT_TRUE(contains_copy(t, Pattern::R));
}

TEST(Copies, InvariantUnderRelabelling) {
  std::mt19937_64 rng(5);
  std::vector<int> image{0, 1, 2, 3, 4, 5, 6, 7, 8};
  for (int t = 0; t < 50; ++t) {
    std::shuffle(image.begin() + 1, image.end(), rng);
    for (Pattern p : {Pattern::S, Pattern::R}) {
      const auto host = relabel(p == Pattern::S ? build_S(8) : build_R(8), image);
      const auto w = contains_copy(host, p);
      ASSERT_TRUE(w);
      for (Subset x : w->triples) EXPECT_TRUE(host.contains(x));
    }
  }
}

TEST(Copies, WitnessMapsPatternOntoHost) {
  const auto host = UniformFamily::from_lists(8, 3, {{2, 5, 8}, {2, 6, 7}, {5, 7, 8}, {1, 3, 4}});
  const auto w = contains_copy(host, Pattern::R);
  ASSERT_TRUE(w);
  const auto r = build_R(6);
  for (std::size_t i = 0; i < 3; ++i) {
    Mask m = 0;
    for (int v : r[i].elements()) m |= Mask{1} << (w->vertex_map[static_cast<std::size_t>(v)] - 1);
    EXPECT_EQ(Subset(m), w->triples[i]);
  }
}

TEST(Classify, GIsAStarAtOne) {
  const auto c = classify_T3(build_G(9, 4));
  EXPECT_EQ(c.tag, T3Tag::Star);
  EXPECT_EQ(c.apex, 1);
  EXPECT_TRUE(c.warnings.empty());
}

TEST(Classify, FanoPlaneContainsS) {
  // its 3-covers are exactly its seven lines, any two meeting in one point
  const auto fano =
      UniformFamily::from_lists(7, 3, {{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7}, {1, 5, 6}, {2, 6, 7}, {1, 3, 7}});
  const auto c = classify_T3(fano);
  EXPECT_EQ(c.tag, T3Tag::ContainsS);
  EXPECT_EQ(c.t3, std::vector<Subset>(fano.begin(), fano.end()));
  ASSERT_TRUE(c.copy);
  EXPECT_TRUE(c.warnings.empty());
}

TEST(Classify, CompleteTripleSystemOnFourPoints) {
  const auto c = classify_T3(build_K34(4));
  EXPECT_EQ(c.tag, T3Tag::K34);
  EXPECT_EQ(c.host, Subset::interval(1, 4));
  EXPECT_FALSE(c.warnings.empty());  // tau is 2 here
}

TEST(Classify, EmptyWhenNoThreeCovers) {
  const auto c = classify_T3(UniformFamily::from_lists(12, 3, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {10, 11, 12}}));
  EXPECT_EQ(c.tag, T3Tag::Empty);
  EXPECT_FALSE(c.warnings.empty());
}

TEST(Classify, PrefersR) {
  const auto c = classify_T3(saturate(build_R(7)));
  EXPECT_EQ(c.tag, T3Tag::ContainsR);
}

TEST(DisjointnessGraph, OnPairCoversOfR) {
  const auto g = disjointness_graph(covers(build_R(5), 2).members);
  EXPECT_EQ(g.vertices.size(), 7U);
  EXPECT_EQ(g.edges.size(), 8U);
  EXPECT_TRUE(is_edge(g, Subset::of({1, 2}), Subset::of({3, 4})));
  EXPECT_FALSE(g.is_cycle());
  const auto c = g.without(Subset::of({1, 5}));
  EXPECT_TRUE(c.is_cycle());
  EXPECT_EQ(c.vertices.size(), 6U);
  EXPECT_THROW(g.index_of(Subset::of({4, 5})), std::invalid_argument);
  EXPECT_THROW(disjointness_graph(pairs({{1, 2}, {1, 2}})), std::invalid_argument);
}

TEST(DisjointnessGraph, EdgesAreExactlyDisjointPairs) {
  const auto v = covers(build_S(6), 2).members;
  const auto g = disjointness_graph(v);
  std::size_t expected = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) expected += (v[i] & v[j]).empty() ? 1 : 0;
  EXPECT_EQ(g.edges.size(), expected);
}

namespace {

void expect_partition(const DisjointnessGraph& g, const std::vector<Subset>& ind, int expected_case) {
  const auto p = claim6_partition(g, ind);
  EXPECT_EQ(p.proof_case, expected_case);
  std::vector<Subset> seen{p.leftover};
  for (auto [a, b] : p.edges) {
    EXPECT_TRUE(is_edge(g, a, b)) << a.to_string() << " " << b.to_string();
    seen.push_back(a);
    seen.push_back(b);
  }
  std::sort(seen.begin(), seen.end());
  auto verts = g.vertices;
  std::sort(verts.begin(), verts.end());
  EXPECT_EQ(seen, verts);
  EXPECT_EQ(std::find(ind.begin(), ind.end(), p.leftover), ind.end());
}

}  // namespace

TEST(Claim6, BothCases) {
  const auto g = disjointness_graph(covers(build_R(5), 2).members);
  expect_partition(g, pairs({{1, 2}, {1, 3}}), 1);
  expect_partition(g, pairs({{1, 2}, {1, 3}, {1, 5}}), 2);
  expect_partition(g, pairs({{1, 5}, {2, 5}, {3, 5}}), 2);
  EXPECT_THROW(claim6_partition(g, pairs({{1, 2}, {3, 4}})), std::invalid_argument);
  EXPECT_THROW(claim6_partition(disjointness_graph(pairs({{1, 2}, {3, 4}, {5, 6}})), pairs({})),
               std::invalid_argument);
}

TEST(Claim5, MaximumExtensionOfS) {
  const auto r = claim5_maxT();
  EXPECT_EQ(r.max_size, 4U);
  EXPECT_EQ(r.witness.size(), 4U);
  EXPECT_TRUE(is_intersecting(r.witness));
  EXPECT_FALSE(contains_copy(r.witness, Pattern::R));
  for (Subset s : build_S(6)) EXPECT_NE(std::find(r.witness.begin(), r.witness.end(), s), r.witness.end());
  EXPECT_EQ(r.excluded.size(), 12U);
}

#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "ekrforge/canonical.hpp"
#include "ekrforge/constructions.hpp"
#include "ekrforge/search.hpp"
#include "oracles.hpp"

using namespace ekrforge;

namespace {

void expect_feasible(const SearchResult& res) {
  EXPECT_EQ(res.witness.size(), res.value);
  EXPECT_TRUE(is_intersecting(res.witness));
  if (!res.witness.empty()) {
    EXPECT_GE(tau(res.witness), res.r);
  }
}

}  // namespace

TEST(Search, AgreesWithSubfamilyScan) {
  for (auto [n, k] : {std::pair{4, 2}, std::pair{5, 2}, std::pair{6, 2}, std::pair{6, 3}})
    for (int r = 1; r <= 3; ++r) {
      const auto res = max_intersecting(n, k, r);
      EXPECT_EQ(res.status, SearchStatus::ProvedOptimal);
      EXPECT_EQ(static_cast<int>(res.value), oracle::max_intersecting(n, k, r)) << n << " " << k << " " << r;
      expect_feasible(res);
    }
}

TEST(Search, MatchesClosedForms) {
  struct Case {
    int n, k, r;
    std::uint64_t value;
  };
  for (auto c : {Case{7, 3, 1, 15}, Case{7, 3, 2, 13}, Case{7, 3, 3, 10}, Case{8, 3, 2, 16}, Case{8, 3, 3, 10},
                 Case{8, 4, 3, 35}}) {
    const auto res = max_intersecting(c.n, c.k, c.r);
    EXPECT_EQ(res.status, SearchStatus::ProvedOptimal);
    EXPECT_EQ(res.value, c.value) << c.n << " " << c.k << " " << c.r;
    expect_feasible(res);
    EXPECT_TRUE(search_certificate(res).passed());
  }
}

TEST(Search, DeterministicAcrossThreadCounts) {
  SearchOptions one, four;
  four.threads = 4;
  const auto a = max_intersecting(7, 3, 3, one);
  const auto b = max_intersecting(7, 3, 3, four);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.witness, b.witness);
}

TEST(Search, WarmStartKeepsOptimum) {
  SearchOptions opt;
  opt.incumbent = build_G(8, 4);
  const auto res = max_intersecting(8, 4, 3, opt);
  EXPECT_EQ(res.value, 35U);
  EXPECT_EQ(res.status, SearchStatus::ProvedOptimal);
  EXPECT_TRUE(res.warm_started);
  expect_feasible(res);
  opt.incumbent = full_star(8, 4);
  EXPECT_THROW(max_intersecting(8, 4, 3, opt), std::invalid_argument);
}

TEST(Search, NodeBudgetGivesLowerBound) {
  SearchOptions opt;
  opt.budget.max_nodes = 10;
  const auto res = max_intersecting(9, 4, 3, opt);
  EXPECT_EQ(res.status, SearchStatus::TimeboxedLowerBound);
  expect_feasible(res);
  EXPECT_TRUE(search_certificate(res).passed());
}

TEST(Search, DegreeCap) {
  for (int ell : {2, 3}) {
    const auto res = max_intersecting_degcap(7, 3, ell);
    EXPECT_EQ(res.status, SearchStatus::ProvedOptimal);
    EXPECT_LE(BigInt(res.value), degcap_bound(7, 3, ell));
    EXPECT_LE(BigInt(max_degree(res.witness).degree), degcap_cap(7, 3, ell));
    expect_feasible(res);
    EXPECT_TRUE(search_certificate(res).passed());
  }
  EXPECT_THROW(max_intersecting_degcap(7, 3, 1), std::invalid_argument);
  EXPECT_THROW(max_intersecting_degcap(6, 3, 2), std::invalid_argument);
}

TEST(Search, RejectsBadParameters) {
  EXPECT_THROW(max_intersecting(5, 3, 1), std::invalid_argument);
  EXPECT_THROW(max_intersecting(7, 3, 4), std::invalid_argument);
  EXPECT_THROW(max_intersecting(12, 4, 1), std::invalid_argument);  // 495 candidates
}

TEST(Certificate, CatchesWrongValue) {
  auto res = max_intersecting(7, 3, 3);
  res.value = 9;
  EXPECT_FALSE(search_certificate(res).passed());
}

TEST(Canonical, InvariantUnderRelabelling) {
  std::mt19937_64 rng(17);
  const auto g = build_G(9, 4);
  const auto base = canonical_form(g);
  std::vector<int> image{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  for (int t = 0; t < 100; ++t) {
    std::shuffle(image.begin() + 1, image.end(), rng);
    EXPECT_EQ(canonical_form(relabel(g, image)), base);
  }
  EXPECT_EQ(base.as_family().size(), g.size());
}

TEST(Canonical, SeparatesNonIsomorphic) {
  EXPECT_NE(canonical_form(build_S(6)), canonical_form(build_R(6)));
  EXPECT_NE(canonical_form(full_star(7, 3)), canonical_form(build_G(7, 3)));
}

TEST(Canonical, IndependentOfHostPosition) {
  const auto a = UniformFamily::from_lists(7, 3, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
  const auto b = UniformFamily::from_lists(7, 3, {{4, 5, 7}, {4, 6, 7}, {5, 6, 7}, {4, 5, 6}});
  EXPECT_EQ(canonical_form(a), canonical_form(b));
}

TEST(Enumerate, OptimaOfSmallCase) {
  const auto res = enumerate_optima(6, 3, 1, 10);
  EXPECT_TRUE(res.complete);
  EXPECT_EQ(res.forms.size(), 13U);
  EXPECT_TRUE(std::is_sorted(res.forms.begin(), res.forms.end()));
  for (const auto& f : res.forms) {
    const auto fam = f.as_family();
    EXPECT_EQ(fam.size(), 10U);
    EXPECT_TRUE(is_intersecting(fam));
  }
  EXPECT_NE(std::find(res.forms.begin(), res.forms.end(), canonical_form(full_star(6, 3))), res.forms.end());
}

TEST(Enumerate, OrbitSizesAddUpToLabelledCount) {
  // labelled intersecting 10-families of 3-sets of [6], by direct scan
  std::vector<Mask> all;
  for (const auto& s : oracle::ksets(6, 3)) all.push_back(oracle::bits(s));
  std::uint64_t labelled = 0;
  for (std::uint32_t f = 0; f < (std::uint32_t{1} << all.size()); ++f) {
    if (std::popcount(f) != 10) continue;
    std::vector<Mask> fam;
    for (std::uint32_t g = f; g; g &= g - 1) fam.push_back(all[std::countr_zero(g)]);
    labelled += oracle::intersecting(fam) ? 1 : 0;
  }
  // each form contributes 6!/|Aut|, automorphisms counted over all permutations
  std::uint64_t from_forms = 0;
  for (const auto& form : enumerate_optima(6, 3, 1, 10).forms) {
    std::vector<int> perm{0, 1, 2, 3, 4, 5, 6};
    std::uint64_t aut = 0;
    do {
      aut += relabel(form.as_family(), perm) == form.as_family() ? 1 : 0;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    from_forms += 720 / aut;
  }
  EXPECT_EQ(from_forms, labelled);
}

TEST(Enumerate, GIsAmongOptimaAtSevenThree) {
  const auto res = enumerate_optima(7, 3, 3, 10);
  EXPECT_TRUE(res.complete);
  EXPECT_NE(std::find(res.forms.begin(), res.forms.end(), canonical_form(build_G(7, 3))), res.forms.end());
}

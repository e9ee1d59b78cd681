#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ekrforge/constructions.hpp"
#include "ekrforge/covers.hpp"
#include "ekrforge/family.hpp"

namespace ekrforge {

enum class Pattern { S, R };

inline const char* to_string(Pattern p) { return p == Pattern::S ? "S" : "R"; }

// An embedding of a 3-edge pattern into a host 3-graph: triples[i] is the
// image of pattern member i, vertex_map[v] the image of pattern vertex v.
struct CopyWitness {
  std::array<Subset, 3> triples;
  std::array<int, 7> vertex_map{};  // index 1..6 used
};

namespace detail {

inline UniformFamily pattern_family(Pattern p) { return p == Pattern::S ? build_S(6) : build_R(6); }

// Sorted pairwise intersection sizes and whether a common point exists.
struct Profile {
  std::array<int, 3> pair_sizes;
  bool common_point;
  friend bool operator==(const Profile&, const Profile&) = default;
};

inline Profile profile_of(Subset a, Subset b, Subset c) {
  std::array<int, 3> sz{(a & b).size(), (a & c).size(), (b & c).size()};
  std::sort(sz.begin(), sz.end());
  return {sz, !(a & b & c).empty()};
}

inline Profile pattern_profile(Pattern p) {
  auto f = pattern_family(p);
  return profile_of(f[0], f[1], f[2]);
}

inline Subset map_subset(Subset s, const std::array<int, 7>& vmap) {
  Mask m = 0;
  for (int v : s.elements()) m |= Mask{1} << (vmap[static_cast<std::size_t>(v)] - 1);
  return Subset(m);
}

// Brute-force vertex injection of the pattern onto the host triples.
inline std::optional<CopyWitness> embed(Pattern p, std::array<Subset, 3> host) {
  const auto pat = pattern_family(p);
  const std::vector<int> pv = pat.support().elements();
  const std::vector<int> hv = (host[0] | host[1] | host[2]).elements();
  if (pv.size() != hv.size()) return std::nullopt;
  std::vector<int> perm = hv;
  std::sort(perm.begin(), perm.end());
  do {
    std::array<int, 7> vmap{};
    for (std::size_t i = 0; i < pv.size(); ++i) vmap[static_cast<std::size_t>(pv[i])] = perm[i];
    std::array<Subset, 3> image{};
    for (std::size_t i = 0; i < 3; ++i) image[i] = map_subset(pat[i], vmap);
    auto sorted_image = image;
    auto sorted_host = host;
    std::sort(sorted_image.begin(), sorted_image.end());
    std::sort(sorted_host.begin(), sorted_host.end());
    if (sorted_image == sorted_host) return CopyWitness{image, vmap};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace detail

// Searches a 3-graph for a copy of S or R. Candidate triples of members are
// filtered by their intersection profile before the vertex injection.
inline std::optional<CopyWitness> contains_copy(std::span<const Subset> triples, Pattern p) {
  for (Subset t : triples)
    if (t.size() != 3) throw std::invalid_argument("contains_copy: input must be 3-uniform, got " + t.to_string());
  const auto want = detail::pattern_profile(p);
  const std::size_t m = triples.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t l = j + 1; l < m; ++l) {
        if (detail::profile_of(triples[i], triples[j], triples[l]) != want) continue;
        if (auto w = detail::embed(p, {triples[i], triples[j], triples[l]})) return w;
      }
  return std::nullopt;
}

inline std::optional<CopyWitness> contains_copy(const UniformFamily& t, Pattern p) {
  if (t.k() != 3) throw std::invalid_argument("contains_copy: input must be 3-uniform");
  return contains_copy(t.members(), p);
}

enum class T3Tag { Empty, Star, K34, ContainsS, ContainsR, Unclassified };

inline const char* to_string(T3Tag t) {
  switch (t) {
    case T3Tag::Empty: return "Empty";
    case T3Tag::Star: return "Star";
    case T3Tag::K34: return "K34";
    case T3Tag::ContainsS: return "ContainsS";
    case T3Tag::ContainsR: return "ContainsR";
    case T3Tag::Unclassified: return "Unclassified";
  }
  return "?";
}

struct Classification {
  T3Tag tag = T3Tag::Empty;
  std::vector<Subset> t3;       // T^(3)(F)
  int apex = 0;                 // Star
  Subset host;                  // K34: the 4-set
  std::optional<CopyWitness> copy;  // ContainsS / ContainsR
  std::vector<std::string> warnings;
};

// Star/K3(4)/S/R classification of the 3-covers of F. R is reported in
// preference to S.
inline Classification classify_T3(const UniformFamily& f) {
  Classification out;
  if (!is_intersecting(f)) out.warnings.emplace_back("family is not intersecting");
  if (f.n() < 3) {
    out.warnings.emplace_back("ground set too small for 3-covers");
    return out;
  }
  if (!f.empty()) {
    const int t = tau(f);
    if (t != 3) out.warnings.push_back("tau(F) = " + std::to_string(t) + ", expected 3");
  }
  out.t3 = covers(f, 3).members;
  const auto& t3 = out.t3;
  if (t3.empty()) {
    out.tag = T3Tag::Empty;
    return out;
  }

  Mask common = ~Mask{0};
  for (Subset s : t3) common &= s.bits();
  if (common != 0) {
    out.tag = T3Tag::Star;
    out.apex = Subset(common).min_element();
    return out;
  }

  bool has_single_meet = false;
  bool two_intersecting = true;
  for (std::size_t i = 0; i < t3.size(); ++i)
    for (std::size_t j = i + 1; j < t3.size(); ++j) {
      const int s = (t3[i] & t3[j]).size();
      if (s == 1) has_single_meet = true;
      if (s != 2) two_intersecting = false;
    }

  if (two_intersecting) {
    // Pairwise intersections of size 2 without a common point force all
    // triples of a 4-set; cross-check that directly.
    const Subset u = Subset(std::accumulate(t3.begin(), t3.end(), Mask{0},
                                            [](Mask a, Subset s) { return a | s.bits(); }));
    std::vector<Subset> expect;
    if (u.size() == 4) {
      for (Subset s : all_subsets_of_size(u.max_element(), 3))
        if (s.subset_of(u)) expect.push_back(s);
    }
    if (u.size() == 4 && expect == t3) {
      out.tag = T3Tag::K34;
      out.host = u;
      return out;
    }
    out.tag = T3Tag::Unclassified;
    out.warnings.emplace_back("2-intersecting 3-covers that are not K3(4)");
    return out;
  }

  if (has_single_meet) {
    if (auto w = contains_copy(t3, Pattern::R)) {
      out.tag = T3Tag::ContainsR;
      out.copy = w;
      return out;
    }
    if (auto w = contains_copy(t3, Pattern::S)) {
      out.tag = T3Tag::ContainsS;
      out.copy = w;
      return out;
    }
  }
  out.tag = T3Tag::Unclassified;
  out.warnings.emplace_back("3-covers are neither a star, K3(4), nor contain S or R");
  return out;
}

// Vertices are 2-sets; edges join disjoint vertices.
struct DisjointnessGraph {
  std::vector<Subset> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j

  std::size_t index_of(Subset v) const {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) throw std::invalid_argument("vertex " + v.to_string() + " not in graph");
    return static_cast<std::size_t>(it - vertices.begin());
  }

  bool adjacent(Subset a, Subset b) const { return a != b && !a.meets(b); }

  std::size_t degree(Subset v) const {
    std::size_t d = 0;
    for (Subset u : vertices) d += adjacent(u, v) ? 1 : 0;
    return d;
  }

  DisjointnessGraph without(Subset v) const;

  // Connected and 2-regular.
  bool is_cycle() const {
    if (vertices.size() < 3 || edges.size() != vertices.size()) return false;
    for (Subset v : vertices)
      if (degree(v) != 2) return false;
    std::vector<bool> seen(vertices.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < vertices.size(); ++j)
        if (!seen[j] && adjacent(vertices[i], vertices[j])) {
          seen[j] = true;
          stack.push_back(j);
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }
};

inline DisjointnessGraph disjointness_graph(std::vector<Subset> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (vertices[i] == vertices[j]) throw std::invalid_argument("duplicate vertex " + vertices[i].to_string());
  DisjointnessGraph g{std::move(vertices), {}};
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < g.vertices.size(); ++j)
      if (!g.vertices[i].meets(g.vertices[j])) g.edges.emplace_back(i, j);
  return g;
}

inline DisjointnessGraph DisjointnessGraph::without(Subset v) const {
  std::vector<Subset> rest;
  for (Subset u : vertices)
    if (u != v) rest.push_back(u);
  return disjointness_graph(std::move(rest));
}

struct Claim6Partition {
  std::array<std::pair<Subset, Subset>, 3> edges;
  Subset leftover;
  int proof_case;  // 1: {1,5} not in I, 2: {1,5} in I
};

// Splits the auxiliary graph on P(R) into three disjoint edges plus one
// vertex outside the independent set I.
inline Claim6Partition claim6_partition(const DisjointnessGraph& g, std::span<const Subset> independent) {
  auto pr = covers(build_R(5), 2).members;
  auto verts = g.vertices;
  std::sort(verts.begin(), verts.end());
  if (verts != pr) throw std::invalid_argument("claim6_partition: graph is not built on P(R)");
  for (Subset v : independent) (void)g.index_of(v);
  for (std::size_t i = 0; i < independent.size(); ++i)
    for (std::size_t j = i + 1; j < independent.size(); ++j)
      if (g.adjacent(independent[i], independent[j])) {
        throw std::invalid_argument("claim6_partition: I is not independent (" + independent[i].to_string() + ", " +
                                    independent[j].to_string() + ")");
      }

  const Subset v15 = Subset::of({1, 5});
  const bool has15 = std::find(independent.begin(), independent.end(), v15) != independent.end();
  Claim6Partition out{};
  if (!has15) {
    // Case (i): G - {1,5} is a 6-cycle; take alternate edges along it.
    const auto c = g.without(v15);
    if (!c.is_cycle() || c.vertices.size() != 6) throw std::logic_error("G - {1,5} is not a 6-cycle");
    std::vector<Subset> walk{c.vertices[0]};
    Subset prev(~Mask{0});
    while (walk.size() < 6) {
      const Subset cur = walk.back();
      for (Subset u : c.vertices)
        if (c.adjacent(cur, u) && u != prev) {
          prev = cur;
          walk.push_back(u);
          break;
        }
    }
    for (std::size_t i = 0; i < 3; ++i) out.edges[i] = {walk[2 * i], walk[2 * i + 1]};
    out.leftover = v15;
    out.proof_case = 1;
  } else {
    out.edges = {std::pair{Subset::of({1, 3}), Subset::of({2, 5})}, std::pair{Subset::of({3, 5}), Subset::of({1, 2})},
                 std::pair{Subset::of({1, 5}), Subset::of({2, 4})}};
    out.leftover = Subset::of({3, 4});
    out.proof_case = 2;
  }
  return out;
}

struct Claim5Result {
  std::size_t max_size = 0;
  std::vector<Subset> witness;  // a maximum T
  // The twelve triples of the six excluded complementary pairs, each with
  // the R-copy that appears once it is added to S (nullopt if none).
  std::vector<std::pair<Subset, std::optional<CopyWitness>>> excluded;
  bool all_excluded_confirmed = false;
};

// The six complementary pairs of [6] whose members cannot join S without
// creating a copy of R.
inline std::vector<std::pair<Subset, Subset>> claim5_excluded_pairs() {
  return {{Subset::of({2, 3, 4}), Subset::of({1, 5, 6})}, {Subset::of({2, 3, 5}), Subset::of({1, 4, 6})},
          {Subset::of({2, 4, 5}), Subset::of({1, 3, 6})}, {Subset::of({3, 4, 5}), Subset::of({1, 2, 6})},
          {Subset::of({3, 4, 6}), Subset::of({1, 2, 5})}, {Subset::of({1, 3, 4}), Subset::of({2, 5, 6})}};
}

// Largest intersecting T ⊆ binom([6],3) containing S with no copy of R,
// by exhaustive enumeration over the 17 triples outside S.
inline Claim5Result claim5_maxT() {
  const auto s = build_S(6);
  std::vector<Subset> rest;
  for (Subset t : all_subsets_of_size(6, 3))
    if (!s.contains(t)) rest.push_back(t);

  Claim5Result out;
  std::vector<Subset> cur;
  for (Mask pick = 0; pick < (Mask{1} << rest.size()); ++pick) {
    cur.assign(s.begin(), s.end());
    for (std::size_t i = 0; i < rest.size(); ++i)
      if ((pick >> i) & 1U) cur.push_back(rest[i]);
    if (cur.size() <= out.max_size) continue;
    if (!is_intersecting(cur)) continue;
    if (contains_copy(cur, Pattern::R)) continue;
    out.max_size = cur.size();
    out.witness = cur;
    std::sort(out.witness.begin(), out.witness.end());
  }

  out.all_excluded_confirmed = true;
  for (auto [a, b] : claim5_excluded_pairs()) {
    for (Subset t : {a, b}) {
      std::vector<Subset> with(s.begin(), s.end());
      with.push_back(t);
      auto w = contains_copy(with, Pattern::R);
      if (!w) out.all_excluded_confirmed = false;
      out.excluded.emplace_back(t, w);
    }
  }
  return out;
}

}  // namespace ekrforge

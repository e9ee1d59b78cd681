#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "ekrforge/family.hpp"

namespace ekrforge {

inline bool is_cover(Subset t, std::span<const Subset> sets) {
  return std::all_of(sets.begin(), sets.end(), [t](Subset s) { return t.meets(s); });
}

inline bool is_cover(Subset t, const UniformFamily& f) { return is_cover(t, f.members()); }

// T^(l)(F): every l-subset of [n] meeting all members of the base family.
struct CoverFamily {
  UniformFamily base;
  int ell;
  std::vector<Subset> members;  // colex order

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  UniformFamily as_family() const { return UniformFamily(base.n(), ell, members); }
};

// An empty base family is covered by every l-subset.
inline CoverFamily covers(const UniformFamily& f, int ell) {
  if (ell < 1 || ell > f.n()) throw std::invalid_argument("cover size must be in [1,n]");
  CoverFamily out{f, ell, {}};
  for_each_subset_of_size(f.n(), ell, [&](Subset t) {
    if (is_cover(t, f)) out.members.push_back(t);
  });
  return out;
}

// T(H): covers of size at most k, grouped by size, colex within a size.
inline std::vector<Subset> all_covers(const UniformFamily& h) {
  std::vector<Subset> out;
  for (int ell = 1; ell <= h.k(); ++ell) {
    auto c = covers(h, ell);
    out.insert(out.end(), c.members.begin(), c.members.end());
  }
  return out;
}

namespace detail {

// Greedy packing of pairwise disjoint uncovered sets: each needs its own
// cover element, so the count is a lower bound on what remains to pick.
inline int disjoint_packing(std::span<const Subset> sets, Subset chosen) {
  Mask used = 0;
  int count = 0;
  for (Subset s : sets) {
    if (s.meets(chosen)) continue;
    if ((s.bits() & used) == 0) {
      used |= s.bits();
      ++count;
    }
  }
  return count;
}

inline bool cover_within(std::span<const Subset> sets, Subset chosen, int budget, int n) {
  auto open = std::find_if(sets.begin(), sets.end(), [chosen](Subset s) { return !s.meets(chosen); });
  if (open == sets.end()) return true;
  if (budget == 0) return false;
  if (disjoint_packing(sets, chosen) > budget) return false;

  // Branch on the elements of the first uncovered set, lowest residual degree first.
  std::vector<std::pair<int, int>> order;  // (degree, element)
  for (int x : open->elements()) {
    int d = 0;
    for (Subset s : sets)
      if (!s.meets(chosen) && s.contains(x)) ++d;
    order.emplace_back(d, x);
  }
  std::sort(order.begin(), order.end());
  for (auto [d, x] : order) {
    if (x > n) continue;
    if (cover_within(sets, chosen | Subset(Mask{1} << (x - 1)), budget - 1, n)) return true;
  }
  return false;
}

}  // namespace detail

// Covering number of an arbitrary set system over [n], by iterative
// deepening on the cover size with branch-and-bound.
inline int tau(std::span<const Subset> sets, int n) {
  if (sets.empty()) throw std::invalid_argument("covering number of an empty family is undefined");
  for (Subset s : sets)
    if (s.empty()) throw std::invalid_argument("a family containing the empty set has no cover");
  for (int ell = 1; ell <= n; ++ell) {
    if (detail::cover_within(sets, Subset(0), ell, n)) return ell;
  }
  throw std::logic_error("tau: no cover found");
}

inline int tau(const UniformFamily& f) { return tau(f.members(), f.n()); }

namespace detail {

inline void require_intersecting(const UniformFamily& f, const char* what) {
  if (!is_intersecting(f)) throw std::invalid_argument(std::string(what) + ": family is not intersecting");
}

}  // namespace detail

// Deterministic completion: scan all k-sets in colex order and keep each one
// that meets every member collected so far.
inline UniformFamily saturate(const UniformFamily& f) {
  detail::require_intersecting(f, "saturate");
  std::vector<Subset> members(f.begin(), f.end());
  for_each_subset_of_size(f.n(), f.k(), [&](Subset s) {
    if (f.contains(s)) return;
    if (is_cover(s, members)) members.push_back(s);
  });
  return UniformFamily(f.n(), f.k(), std::move(members));
}

// Saturation that scans candidates in a caller-given order.
inline UniformFamily saturate_in_order(const UniformFamily& f, std::span<const Subset> order) {
  detail::require_intersecting(f, "saturate");
  std::vector<Subset> members(f.begin(), f.end());
  for (Subset s : order) {
    if (s.size() != f.k() || f.contains(s)) continue;
    if (std::find(members.begin(), members.end(), s) != members.end()) continue;
    if (is_cover(s, members)) members.push_back(s);
  }
  return UniformFamily(f.n(), f.k(), std::move(members));
}

inline bool is_saturated(const UniformFamily& f) {
  detail::require_intersecting(f, "is_saturated");
  bool saturated = true;
  for_each_subset_of_size(f.n(), f.k(), [&](Subset s) {
    if (!f.contains(s) && is_cover(s, f)) {
      saturated = false;
      return false;
    }
    return true;
  });
  return saturated;
}

}  // namespace ekrforge

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ekrforge/family.hpp"

namespace ekrforge {

// Relabeling-invariant encoding: the least sorted member list over the
// labelings explored by individualization-refinement.
struct CanonicalForm {
  int n = 0;
  int k = 0;
  std::vector<Mask> members;

  bool operator==(const CanonicalForm&) const = default;
  auto operator<=>(const CanonicalForm&) const = default;

  UniformFamily as_family() const {
    std::vector<Subset> m;
    m.reserve(members.size());
    for (Mask b : members) m.push_back(Subset(b));
    return UniformFamily(n, k, std::move(m));
  }

  std::string to_string() const {
    std::string s;
    for (Mask b : members) {
      if (!s.empty()) s += ' ';
      s += Subset(b).to_string();
    }
    return s;
  }
};

namespace detail {

// Ordered partition of [n]; cells[i] lists the elements of cell i.
using Cells = std::vector<std::vector<int>>;

// Splits cells by the multiset of cell indices seen from each element's
// members, until stable. Only cell positions are consulted, so the result
// commutes with relabeling.
inline Cells refine(const std::vector<Mask>& fam, int n, Cells cells) {
  while (true) {
    std::vector<int> cell_of(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (int x : cells[c]) cell_of[static_cast<std::size_t>(x)] = static_cast<int>(c);

    // signature(x) = sorted list over members F ∋ x of the sorted cell profile of F
    std::vector<std::vector<std::vector<int>>> sig(static_cast<std::size_t>(n) + 1);
    for (Mask m : fam) {
      std::vector<int> prof;
      for (Mask b = m; b; b &= b - 1) prof.push_back(cell_of[static_cast<std::size_t>(std::countr_zero(b) + 1)]);
      std::sort(prof.begin(), prof.end());
      for (Mask b = m; b; b &= b - 1) sig[static_cast<std::size_t>(std::countr_zero(b) + 1)].push_back(prof);
    }
    for (auto& s : sig) std::sort(s.begin(), s.end());

    Cells next;
    for (const auto& cell : cells) {
      std::vector<int> els = cell;
      std::stable_sort(els.begin(), els.end(), [&](int a, int b) {
        return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)];
      });
      std::size_t i = 0;
      while (i < els.size()) {
        std::size_t j = i + 1;
        while (j < els.size() && sig[static_cast<std::size_t>(els[j])] == sig[static_cast<std::size_t>(els[i])]) ++j;
        next.emplace_back(els.begin() + static_cast<std::ptrdiff_t>(i), els.begin() + static_cast<std::ptrdiff_t>(j));
        i = j;
      }
    }
    if (next.size() == cells.size()) return next;
    cells = std::move(next);
  }
}

inline std::vector<Mask> encode(const std::vector<Mask>& fam, const Cells& discrete) {
  std::vector<int> label(discrete.size() + 1, 0);
  for (std::size_t i = 0; i < discrete.size(); ++i) label[static_cast<std::size_t>(discrete[i][0])] = static_cast<int>(i);
  std::vector<Mask> out;
  out.reserve(fam.size());
  for (Mask m : fam) {
    Mask r = 0;
    for (Mask b = m; b; b &= b - 1) r |= Mask{1} << label[static_cast<std::size_t>(std::countr_zero(b) + 1)];
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline void canon_search(const std::vector<Mask>& fam, int n, const Cells& cells, std::vector<Mask>& best, bool& have) {
  auto target = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
  if (target == cells.end()) {
    auto enc = encode(fam, cells);
    if (!have || enc < best) {
      best = std::move(enc);
      have = true;
    }
    return;
  }
  const auto pos = static_cast<std::size_t>(target - cells.begin());
  for (int v : *target) {
    Cells next;
    next.reserve(cells.size() + 1);
    next.insert(next.end(), cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(pos));
    next.push_back({v});
    std::vector<int> rest;
    for (int x : *target)
      if (x != v) rest.push_back(x);
    next.push_back(std::move(rest));
    next.insert(next.end(), cells.begin() + static_cast<std::ptrdiff_t>(pos) + 1, cells.end());
    canon_search(fam, n, refine(fam, n, std::move(next)), best, have);
  }
}

}  // namespace detail

inline CanonicalForm canonical_form(const UniformFamily& f) {
  std::vector<Mask> fam;
  fam.reserve(f.size());
  for (Subset s : f) fam.push_back(s.bits());
  std::vector<int> all(static_cast<std::size_t>(f.n()));
  std::iota(all.begin(), all.end(), 1);
  auto cells = detail::refine(fam, f.n(), detail::Cells{all});
  CanonicalForm out{f.n(), f.k(), {}};
  bool have = false;
  detail::canon_search(fam, f.n(), cells, out.members, have);
  return out;
}

}  // namespace ekrforge

#pragma once

// Test-side reference implementations. These deliberately avoid the library's
// enumeration and search code so they can serve as independent checks.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace oracle {

using Sets = std::vector<std::vector<int>>;

// Pascal's triangle, exact while it fits in 64 bits.
inline std::uint64_t choose(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::vector<std::vector<std::uint64_t>> t(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    t[i].assign(static_cast<std::size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
  }
  return t[n][k];
}

// k-subsets of [n] as sorted element lists, via next_permutation on a selector.
inline Sets ksets(int n, int k) {
  Sets out;
  std::vector<bool> sel(static_cast<std::size_t>(n), false);
  std::fill(sel.begin(), sel.begin() + k, true);
  do {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (sel[i]) s.push_back(i + 1);
    out.push_back(s);
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return out;
}

inline std::uint64_t bits(const std::vector<int>& s) {
  std::uint64_t m = 0;
  for (int x : s) m |= std::uint64_t{1} << (x - 1);
  return m;
}

// Smallest t such that some t-subset of [n] meets every set.
inline int tau(const std::vector<std::uint64_t>& sets, int n) {
  for (int t = 1; t <= n; ++t) {
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
      if (std::popcount(c) != t) continue;
      bool ok = true;
      for (auto s : sets)
        if ((s & c) == 0) {
          ok = false;
          break;
        }
      if (ok) return t;
    }
  }
  return -1;
}

inline bool intersecting(const std::vector<std::uint64_t>& sets) {
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if ((sets[i] & sets[j]) == 0) return false;
  return true;
}

// m(n,k,r) by scanning every subfamily; only for binom(n,k) <= 20.
inline int max_intersecting(int n, int k, int r) {
  const auto all = ksets(n, k);
  std::vector<std::uint64_t> m;
  for (const auto& s : all) m.push_back(bits(s));
  const std::size_t q = m.size();
  std::vector<std::uint32_t> disjoint(q, 0);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      if ((m[i] & m[j]) == 0) disjoint[i] |= std::uint32_t{1} << j;
  int best = 0;
  for (std::uint32_t f = 1; f < (std::uint32_t{1} << q); ++f) {
    const int size = std::popcount(f);
    if (size <= best) continue;
    bool ok = true;
    for (std::uint32_t g = f; g && ok; g &= g - 1)
      if (disjoint[std::countr_zero(g)] & f) ok = false;
    if (!ok) continue;
    std::vector<std::uint64_t> fam;
    for (std::uint32_t g = f; g; g &= g - 1) fam.push_back(m[std::countr_zero(g)]);
    if (tau(fam, n) >= r) best = size;
  }
  return best;
}

}  // namespace oracle

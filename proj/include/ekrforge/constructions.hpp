#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ekrforge/covers.hpp"
#include "ekrforge/exact.hpp"
#include "ekrforge/family.hpp"

namespace ekrforge {

namespace detail {

inline void require_ground(int n, int min_n, const char* name) {
  if (n < min_n) {
    throw std::invalid_argument(std::string(name) + " needs n >= " + std::to_string(min_n) + ", got " +
                                std::to_string(n));
  }
}

}  // namespace detail

// S = {123, 145, 246}
inline UniformFamily build_S(int n) {
  detail::require_ground(n, 6, "S");
  return UniformFamily::from_lists(n, 3, {{1, 2, 3}, {1, 4, 5}, {2, 4, 6}});
}

// R = {123, 145, 235}
inline UniformFamily build_R(int n) {
  detail::require_ground(n, 5, "R");
  return UniformFamily::from_lists(n, 3, {{1, 2, 3}, {1, 4, 5}, {2, 3, 5}});
}

// K3(4): all triples of [4].
inline UniformFamily build_K34(int n) {
  detail::require_ground(n, 4, "K3(4)");
  return UniformFamily(n, 3, all_subsets_of_size(4, 3));
}

inline UniformFamily full_star(int n, int k, int apex = 1) {
  if (apex < 1 || apex > n) throw std::invalid_argument("star apex outside [n]");
  std::vector<Subset> m;
  for_each_subset_of_size(n, k, [&](Subset s) {
    if (s.contains(apex)) m.push_back(s);
  });
  return UniformFamily(n, k, std::move(m));
}

// The three sets B of G(n,k).
inline std::vector<Subset> g_family_b(int k) {
  return {Subset::interval(2, k + 1), Subset::of({2}) | Subset::interval(k + 2, 2 * k),
          Subset::of({3}) | Subset::interval(k + 2, 2 * k)};
}

// G(n,k) = A ∪ B where A is every k-set through 1 meeting all three B-sets.
// A is materialized by filtering, so its size is an independent check on the
// closed-form count.
inline UniformFamily build_G(int n, int k) {
  if (k < 3 || n < 2 * k) throw std::invalid_argument("G(n,k) needs n >= 2k >= 6");
  if (n > kMaxGround) throw std::invalid_argument("G(n,k) needs n <= 64");
  const auto b = g_family_b(k);
  std::vector<Subset> members(b.begin(), b.end());
  // Enumerate (k-1)-subsets of [2,n] and prepend 1.
  for_each_subset_of_size(n - 1, k - 1, [&](Subset rest) {
    const Subset a = Subset(rest.bits() << 1) | Subset::of({1});
    if (is_cover(a, b)) members.push_back(a);
  });
  return UniformFamily(n, k, std::move(members));
}

// Closed-form |G(n,k)|.
inline BigInt g_size_formula(int n, int k) {
  if (k < 3 || n < 2 * k) throw std::invalid_argument("g_size_formula needs n >= 2k >= 6");
  return binom(n - 1, k - 1) - binom(n - k, k - 1) - binom(n - k - 1, k - 1) + binom(n - 2 * k, k - 1) +
         binom(n - k - 2, k - 3) + 3;
}

// F_H = H ∪ {F : 1 ∈ F, F ⊇ T for some T ∈ T(H)}. For |F| = k a k-set
// contains a cover of H exactly when it is one, which is what is tested.
inline UniformFamily build_F_H(const UniformFamily& h) {
  if (!is_intersecting(h)) throw std::invalid_argument("F_H: H must be intersecting");
  for (Subset s : h)
    if (s.contains(1)) throw std::invalid_argument("F_H: H must live on [2,n], member " + s.to_string() + " has 1");
  std::vector<Subset> members(h.begin(), h.end());
  for_each_subset_of_size(h.n() - 1, h.k() - 1, [&](Subset rest) {
    const Subset f = Subset(rest.bits() << 1) | Subset::of({1});
    if (is_cover(f, h)) members.push_back(f);
  });
  return UniformFamily(h.n(), h.k(), std::move(members));
}

// F precedes G in lex order when min(F \ G) < min(G \ F), i.e. the smallest
// element of the symmetric difference lies in F.
inline bool lex_precedes(Subset f, Subset g) {
  const Mask d = f.bits() ^ g.bits();
  if (d == 0) return false;
  return (f.bits() & d & (~d + 1)) != 0;
}

// All k-subsets of [n] in lex order.
inline std::vector<Subset> lex_order(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(Subset::of(c));
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// L(n,k,m): the first m k-sets in lex order.
inline UniformFamily lex_family(int n, int k, std::uint64_t m) {
  const std::uint64_t total = binom_u64(n, k);
  if (m > total) {
    throw std::invalid_argument("lex_family: m = " + std::to_string(m) + " exceeds binom(n,k) = " +
                                std::to_string(total));
  }
  auto all = lex_order(n, k);
  all.resize(static_cast<std::size_t>(m));
  return UniformFamily(n, k, std::move(all));
}

}  // namespace ekrforge

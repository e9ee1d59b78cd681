#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ekrforge/exact.hpp"

namespace ekrforge {

using Mask = std::uint64_t;

inline constexpr int kMaxGround = 64;

// A subset of [n] = {1, ..., n}. Element x lives in bit x - 1, so the
// default ordering of masks is colex order on sets.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(Mask bits) : bits_(bits) {}

  static Subset of(std::initializer_list<int> elements) {
    return of(std::span<const int>(elements.begin(), elements.size()));
  }

  static Subset of(std::span<const int> elements) {
    Mask m = 0;
    for (int x : elements) {
      if (x < 1 || x > kMaxGround) {
        throw std::out_of_range("element " + std::to_string(x) + " outside [1,64]");
      }
      m |= Mask{1} << (x - 1);
    }
    return Subset(m);
  }

  // The discrete interval [a, b]; empty when a > b.
  static constexpr Subset interval(int a, int b) {
    Mask m = 0;
    for (int x = a; x <= b; ++x) m |= Mask{1} << (x - 1);
    return Subset(m);
  }

  static constexpr Subset ground(int n) {
    return Subset(n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1);
  }

  constexpr Mask bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int x) const { return x >= 1 && x <= 64 && ((bits_ >> (x - 1)) & 1U); }
  constexpr bool meets(Subset o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool subset_of(Subset o) const { return (bits_ & ~o.bits_) == 0; }

  // 1-based smallest / largest element, 0 for the empty set.
  constexpr int min_element() const { return bits_ ? std::countr_zero(bits_) + 1 : 0; }
  constexpr int max_element() const { return bits_ ? 64 - std::countl_zero(bits_) : 0; }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Mask m = bits_; m; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int x : elements()) {
      if (!first) s += ',';
      s += std::to_string(x);
      first = false;
    }
    return s + "}";
  }

  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  // Set difference.
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(Subset, Subset) = default;
  friend constexpr auto operator<=>(Subset a, Subset b) { return a.bits_ <=> b.bits_; }

 private:
  Mask bits_ = 0;
};

// Members of uniform families are k-sets; the family carries n and k.
using KSet = Subset;

// Visits every size-l subset of [n] in colex order (Gosper's hack).
// The visitor may return false to stop early.
template <typename Visitor>
void for_each_subset_of_size(int n, int l, Visitor&& visit) {
  if (l < 0 || l > n) return;
  if (l == 0) {
    visit(Subset(0));
    return;
  }
  using Wide = unsigned __int128;
  const Wide limit = Wide{1} << n;
  Wide x = (Wide{1} << l) - 1;
  while (x < limit) {
    if constexpr (std::is_same_v<decltype(visit(Subset(0))), bool>) {
      if (!visit(Subset(static_cast<Mask>(x)))) return;
    } else {
      visit(Subset(static_cast<Mask>(x)));
    }
    const Wide c = x & (~x + 1);
    const Wide r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
}

inline std::vector<Subset> all_subsets_of_size(int n, int l) {
  std::vector<Subset> out;
  for_each_subset_of_size(n, l, [&](Subset s) { out.push_back(s); });
  return out;
}

// A duplicate-free family of k-subsets of [n], kept sorted in colex order.
class UniformFamily {
 public:
  UniformFamily(int n, int k) : n_(n), k_(k) { check_params(); }

  UniformFamily(int n, int k, std::vector<Subset> members) : n_(n), k_(k), members_(std::move(members)) {
    check_params();
    const Subset g = Subset::ground(n_);
    for (Subset m : members_) {
      if (m.size() != k_) {
        throw std::invalid_argument("member " + m.to_string() + " has size " + std::to_string(m.size()) +
                                    ", expected " + std::to_string(k_));
      }
      if (!m.subset_of(g)) {
        throw std::invalid_argument("member " + m.to_string() + " is not a subset of [" + std::to_string(n_) + "]");
      }
    }
    std::sort(members_.begin(), members_.end());
    auto dup = std::adjacent_find(members_.begin(), members_.end());
    if (dup != members_.end()) throw std::invalid_argument("duplicate member " + dup->to_string());
  }

  static UniformFamily from_lists(int n, int k, std::initializer_list<std::initializer_list<int>> lists) {
    std::vector<Subset> m;
    m.reserve(lists.size());
    for (auto l : lists) m.push_back(Subset::of(l));
    return UniformFamily(n, k, std::move(m));
  }

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::span<const Subset> members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  Subset operator[](std::size_t i) const { return members_[i]; }

  bool contains(Subset s) const { return std::binary_search(members_.begin(), members_.end(), s); }

  Subset support() const {
    Mask m = 0;
    for (Subset s : members_) m |= s.bits();
    return Subset(m);
  }

  friend bool operator==(const UniformFamily&, const UniformFamily&) = default;

 private:
  void check_params() const {
    if (n_ < 1 || n_ > kMaxGround) throw std::invalid_argument("ground size n must be in [1,64]");
    if (k_ < 0 || k_ > n_) throw std::invalid_argument("uniformity k must be in [0,n]");
  }

  int n_;
  int k_;
  std::vector<Subset> members_;
};

inline bool is_intersecting(std::span<const Subset> sets) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) return false;
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (!sets[i].meets(sets[j])) return false;
    }
  }
  return true;
}

inline bool is_intersecting(const UniformFamily& f) { return is_intersecting(f.members()); }

inline bool are_cross_intersecting(const UniformFamily& a, const UniformFamily& b) {
  if (a.n() != b.n()) throw std::invalid_argument("cross-intersection check needs equal ground sizes");
  for (Subset x : a)
    for (Subset y : b)
      if (!x.meets(y)) return false;
  return true;
}

// Members F with |F ∩ window| == i.
inline UniformFamily layer(const UniformFamily& f, Subset window, int i) {
  std::vector<Subset> out;
  for (Subset s : f)
    if ((s & window).size() == i) out.push_back(s);
  return UniformFamily(f.n(), f.k(), std::move(out));
}

inline std::size_t degree(const UniformFamily& f, int x) {
  std::size_t d = 0;
  for (Subset s : f) d += s.contains(x) ? 1 : 0;
  return d;
}

struct MaxDegree {
  int element;
  std::size_t degree;
};

// Ties go to the smallest element.
inline MaxDegree max_degree(const UniformFamily& f) {
  if (f.empty()) throw std::invalid_argument("max_degree of an empty family");
  MaxDegree best{1, degree(f, 1)};
  for (int x = 2; x <= f.n(); ++x) {
    const std::size_t d = degree(f, x);
    if (d > best.degree) best = {x, d};
  }
  return best;
}

struct TraceEntry {
  std::size_t count;
  UniformFamily residual;  // members F \ U over [n] \ U, uniformity k - |S|
};

// The trace of a family on a window U: S -> F(S, U) = {F \ U : F ∩ U = S}.
class TraceStats {
 public:
  TraceStats(const UniformFamily& f, Subset window) : n_(f.n()), k_(f.k()), window_(window), total_(f.size()) {
    if (!window.subset_of(Subset::ground(f.n()))) {
      throw std::invalid_argument("trace window " + window.to_string() + " is not a subset of [n]");
    }
    std::map<Subset, std::vector<Subset>> buckets;
    for (Subset s : f) buckets[s & window].push_back(s - window);
    for (auto& [key, rest] : buckets) {
      const std::size_t c = rest.size();
      table_.emplace(key, TraceEntry{c, UniformFamily(n_, k_ - key.size(), std::move(rest))});
    }
  }

  int n() const { return n_; }
  int k() const { return k_; }
  Subset window() const { return window_; }
  std::size_t total() const { return total_; }
  const std::map<Subset, TraceEntry>& table() const { return table_; }

  // f_S; zero for traces that do not occur.
  std::size_t f(Subset s) const {
    if (!s.subset_of(window_)) throw std::invalid_argument("trace key " + s.to_string() + " is not inside the window");
    auto it = table_.find(s);
    return it == table_.end() ? 0 : it->second.count;
  }

  // alpha(S) = f_S / binom(n - |U|, k - |S|). Undefined (nullopt) for S = ∅
  // and whenever the denominator vanishes.
  std::optional<Rational> alpha(Subset s) const {
    if (s.empty()) return std::nullopt;
    const BigInt den = binom(n_ - window_.size(), k_ - s.size());
    if (den == 0) return std::nullopt;
    return Rational(BigInt(f(s)), den);
  }

 private:
  int n_;
  int k_;
  Subset window_;
  std::size_t total_;
  std::map<Subset, TraceEntry> table_;
};

inline TraceStats trace(const UniformFamily& f, Subset window) { return TraceStats(f, window); }

// Image of a set under a relabeling; image[x] is the new label of element x
// (index 0 unused).
inline Subset relabel(Subset s, std::span<const int> image) {
  Mask out = 0;
  for (int x : s.elements()) out |= Mask{1} << (image[static_cast<std::size_t>(x)] - 1);
  return Subset(out);
}

inline UniformFamily relabel(const UniformFamily& f, std::span<const int> image) {
  if (image.size() != static_cast<std::size_t>(f.n()) + 1) throw std::invalid_argument("relabel: image must cover [n]");
  std::vector<bool> seen(image.size(), false);
  for (std::size_t x = 1; x < image.size(); ++x) {
    const int y = image[x];
    if (y < 1 || y > f.n() || seen[static_cast<std::size_t>(y)]) throw std::invalid_argument("relabel: not a permutation");
    seen[static_cast<std::size_t>(y)] = true;
  }
  std::vector<Subset> out;
  out.reserve(f.size());
  for (Subset s : f) out.push_back(relabel(s, image));
  return UniformFamily(f.n(), f.k(), std::move(out));
}

}  // namespace ekrforge

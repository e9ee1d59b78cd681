#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ekrforge/bounds.hpp"
#include "ekrforge/canonical.hpp"
#include "ekrforge/certificate.hpp"
#include "ekrforge/covers.hpp"
#include "ekrforge/exact.hpp"
#include "ekrforge/family.hpp"

namespace ekrforge {

enum class SearchStatus { ProvedOptimal, TimeboxedLowerBound };

inline const char* to_string(SearchStatus s) {
  return s == SearchStatus::ProvedOptimal ? "proved-optimal" : "timeboxed-lower-bound";
}

struct SearchBudget {
  std::chrono::milliseconds time{std::chrono::minutes(10)};
  std::optional<std::uint64_t> max_nodes;
};

struct SearchOptions {
  SearchBudget budget;
  unsigned threads = 1;
  // Known feasible family used as the starting incumbent; the search then
  // only has to refute anything larger.
  std::optional<UniformFamily> incumbent;
};

struct SearchResult {
  int n = 0, k = 0, r = 1;
  std::optional<int> ell;
  std::uint64_t value = 0;
  UniformFamily witness{1, 0};
  SearchStatus status = SearchStatus::TimeboxedLowerBound;
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
  SearchBudget budget;
  bool warm_started = false;
};

struct OptimaResult {
  std::uint64_t value = 0;
  std::vector<CanonicalForm> forms;  // sorted
  bool complete = false;
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
};

namespace detail {

inline constexpr std::size_t kSearchWords = 4;
inline constexpr std::size_t kSearchCapacity = 64 * kSearchWords;

struct Bits {
  std::array<std::uint64_t, kSearchWords> w{};

  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1U; }
  bool none() const {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  // first set index, or kSearchCapacity
  std::size_t first() const {
    for (std::size_t i = 0; i < kSearchWords; ++i)
      if (w[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w[i]));
    return kSearchCapacity;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    for (std::size_t i = 0; i < kSearchWords; ++i) r.w[i] = w[i] & o.w[i];
    return r;
  }
  Bits minus(const Bits& o) const {
    Bits r;
    for (std::size_t i = 0; i < kSearchWords; ++i) r.w[i] = w[i] & ~o.w[i];
    return r;
  }
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < kSearchWords; ++i)
      for (std::uint64_t x = w[i]; x; x &= x - 1) f(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
  }
};

// Problem tables shared read-only by every worker.
struct Instance {
  int n = 0, k = 0, r = 1;
  int cap = 0;  // element degree cap; 0 = none
  std::vector<Subset> sets;            // colex order
  std::vector<Bits> adj;               // sets meeting set i, excluding i
  std::vector<Bits> containing;        // sets containing element x (index x-1)
  std::vector<Bits> avoid;             // per (r-1)-subset T: sets disjoint from T
  std::vector<Subset> constraint_sets;
};

inline Instance make_instance(int n, int k, int r, int cap) {
  const auto total = binom_u64(n, k);
  if (total > kSearchCapacity) {
    throw std::invalid_argument("search supports at most " + std::to_string(kSearchCapacity) +
                                " candidate k-sets; binom(" + std::to_string(n) + "," + std::to_string(k) +
                                ") = " + std::to_string(total));
  }
  Instance in;
  in.n = n;
  in.k = k;
  in.r = r;
  in.cap = cap;
  in.sets = all_subsets_of_size(n, k);
  const std::size_t m = in.sets.size();
  in.adj.assign(m, Bits{});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && in.sets[i].meets(in.sets[j])) in.adj[i].set(j);
  in.containing.assign(static_cast<std::size_t>(n), Bits{});
  for (std::size_t i = 0; i < m; ++i)
    for (int x : in.sets[i].elements()) in.containing[static_cast<std::size_t>(x - 1)].set(i);
  // tau >= r  <=>  every (r-1)-set is avoided by some member
  if (r >= 2) {
    for (Subset t : all_subsets_of_size(n, r - 1)) {
      Bits b;
      for (std::size_t i = 0; i < m; ++i)
        if (!in.sets[i].meets(t)) b.set(i);
      in.avoid.push_back(b);
      in.constraint_sets.push_back(t);
    }
  }
  return in;
}

struct Shared {
  std::atomic<std::uint64_t> best{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> aborted{false};
  std::chrono::steady_clock::time_point deadline;
  std::optional<std::uint64_t> max_nodes;
};

// Partial state: chosen sets, candidate set, unsatisfied constraints, degrees.
struct State {
  std::vector<std::size_t> chosen;
  Bits cand;
  std::vector<std::size_t> unsat;
  std::array<int, kMaxGround> deg{};
};

class Worker {
 public:
  // target == 0: maximize. target > 0: collect every solution of that size.
  Worker(const Instance& in, Shared& sh, std::uint64_t target) : in_(in), sh_(sh), target_(target) {}

  std::uint64_t local_best = 0;
  std::vector<std::size_t> witness;
  std::set<CanonicalForm> collected;

  void run(State& s) { branch(s); }

  // Applies "add set v" to a child state.
  State child(const State& s, std::size_t v, const Bits& cand) const {
    State c;
    c.chosen = s.chosen;
    c.chosen.push_back(v);
    c.cand = cand & in_.adj[v];
    c.deg = s.deg;
    for (int x : in_.sets[v].elements()) {
      if (++c.deg[static_cast<std::size_t>(x - 1)] == in_.cap && in_.cap > 0)
        c.cand = c.cand.minus(in_.containing[static_cast<std::size_t>(x - 1)]);
    }
    for (std::size_t j : s.unsat)
      if (!in_.avoid[j].test(v)) c.unsat.push_back(j);
    return c;
  }

 private:
  const Instance& in_;
  Shared& sh_;
  std::uint64_t target_;
  std::uint64_t tick_ = 0;

  bool out_of_budget() {
    if (sh_.aborted.load(std::memory_order_relaxed)) return true;
    const auto total = sh_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (sh_.max_nodes && total > *sh_.max_nodes) sh_.aborted = true;
    if ((++tick_ & 1023U) == 0 && std::chrono::steady_clock::now() > sh_.deadline) sh_.aborted = true;
    return sh_.aborted.load(std::memory_order_relaxed);
  }

  // Greedy colouring into classes of pairwise disjoint sets; returns the
  // vertices with nondecreasing colour.
  void colour_sort(const Bits& p, std::vector<std::size_t>& order, std::vector<int>& colour) const {
    order.clear();
    colour.clear();
    Bits u = p;
    int c = 0;
    while (!u.none()) {
      ++c;
      Bits q = u;
      while (!q.none()) {
        const std::size_t v = q.first();
        q.reset(v);
        q = q.minus(in_.adj[v]);
        u.reset(v);
        order.push_back(v);
        colour.push_back(c);
      }
    }
  }

  int colour_bound(const Bits& p) const {
    Bits u = p;
    int c = 0;
    while (!u.none()) {
      ++c;
      Bits q = u;
      while (!q.none()) {
        const std::size_t v = q.first();
        q.reset(v);
        q = q.minus(in_.adj[v]);
        u.reset(v);
      }
    }
    return c;
  }

  bool pruned(std::uint64_t bound) const {
    if (target_ > 0) return bound < target_;
    return bound <= local_best || bound < sh_.best.load(std::memory_order_relaxed);
  }

  void record(const std::vector<std::size_t>& chosen) {
    const std::uint64_t size = chosen.size();
    if (target_ > 0) {
      if (size != target_) return;
      std::vector<Subset> m;
      for (std::size_t i : chosen) m.push_back(in_.sets[i]);
      collected.insert(canonical_form(UniformFamily(in_.n, in_.k, std::move(m))));
      return;
    }
    if (size <= local_best) return;
    local_best = size;
    witness = chosen;
    auto cur = sh_.best.load();
    while (cur < size && !sh_.best.compare_exchange_weak(cur, size)) {
    }
  }

  void branch(State& s) {
    if (out_of_budget()) return;
    if (s.cand.none()) {
      if (s.unsat.empty()) record(s.chosen);
      return;
    }
    if (pruned(s.chosen.size() + static_cast<std::uint64_t>(colour_bound(s.cand)))) return;
    if (s.unsat.empty()) {
      expand(s);
      return;
    }
    // Constraint with the fewest remaining ways to be satisfied.
    std::size_t pick = 0;
    int fewest = -1;
    for (std::size_t j : s.unsat) {
      const int c = (s.cand & in_.avoid[j]).count();
      if (fewest < 0 || c < fewest) {
        fewest = c;
        pick = j;
        if (c == 0) return;
      }
    }
    Bits cand = s.cand;
    const Bits options = s.cand & in_.avoid[pick];
    options.for_each([&](std::size_t v) {
      if (sh_.aborted.load(std::memory_order_relaxed)) return;
      State c = child(s, v, cand);
      branch(c);
      cand.reset(v);
    });
  }

  // Plain max clique once every constraint is met.
  void expand(State& s) {
    if (out_of_budget()) return;
    std::vector<std::size_t> order;
    std::vector<int> colour;
    colour_sort(s.cand, order, colour);
    Bits cand = s.cand;
    for (std::size_t i = order.size(); i-- > 0;) {
      if (pruned(s.chosen.size() + static_cast<std::uint64_t>(colour[i]))) return;
      const std::size_t v = order[i];
      State c = child(s, v, cand);
      if (c.cand.none())
        record(c.chosen);
      else
        expand(c);
      cand.reset(v);
      if (sh_.aborted.load(std::memory_order_relaxed)) return;
    }
  }
};

struct RunOutput {
  std::uint64_t value = 0;
  std::vector<std::size_t> witness;
  std::set<CanonicalForm> collected;
  bool from_incumbent = false;
  bool complete = false;
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
};

// Forces [k] (colex index 0) as the first member, splits the root into
// independent branches and runs them on a pool. Each branch prunes ties only
// against its own incumbent, so a branch holding an optimum always reports
// the same first optimum regardless of scheduling.
inline RunOutput run_search(const Instance& in, const SearchOptions& opt, std::uint64_t target) {
  const auto t0 = std::chrono::steady_clock::now();
  Shared sh;
  sh.deadline = t0 + opt.budget.time;
  sh.max_nodes = opt.budget.max_nodes;

  Bits all;
  for (std::size_t i = 0; i < in.sets.size(); ++i) all.set(i);
  State root;
  for (std::size_t j = 0; j < in.avoid.size(); ++j) root.unsat.push_back(j);
  std::uint64_t floor = 0;
  if (target == 0 && opt.incumbent) floor = opt.incumbent->size();
  sh.best = floor;
  Worker seed(in, sh, target);
  State first = seed.child(root, 0, all);

  std::vector<State> tasks;
  if (first.cand.none()) {
    tasks.push_back(first);
  } else {
    Bits options = first.cand;
    if (!first.unsat.empty()) {
      std::size_t pick = first.unsat.front();
      int fewest = -1;
      for (std::size_t j : first.unsat) {
        const int c = (first.cand & in.avoid[j]).count();
        if (fewest < 0 || c < fewest) {
          fewest = c;
          pick = j;
        }
      }
      options = first.cand & in.avoid[pick];
    }
    Bits cand = first.cand;
    options.for_each([&](std::size_t v) {
      tasks.push_back(seed.child(first, v, cand));
      cand.reset(v);
    });
  }

  struct TaskResult {
    std::uint64_t value = 0;
    std::vector<std::size_t> witness;
    std::set<CanonicalForm> collected;
  };
  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      Worker w(in, sh, target);
      w.local_best = floor;
      w.run(tasks[i]);
      results[i].value = w.witness.empty() ? 0 : w.local_best;
      results[i].witness = std::move(w.witness);
      results[i].collected = std::move(w.collected);
    }
  };
  const unsigned nt = std::max(1U, std::min<unsigned>(opt.threads, static_cast<unsigned>(tasks.size())));
  if (nt == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  RunOutput out;
  std::vector<Subset> best_members;
  for (auto& r : results) {
    out.collected.insert(r.collected.begin(), r.collected.end());
    if (r.value == 0) continue;
    std::vector<Subset> m;
    for (std::size_t i : r.witness) m.push_back(in.sets[i]);
    std::sort(m.begin(), m.end());
    if (r.value > out.value || (r.value == out.value && m < best_members)) {
      out.value = r.value;
      out.witness = r.witness;
      best_members = std::move(m);
    }
  }
  if (floor > out.value) {
    out.value = floor;
    out.from_incumbent = true;
  }
  out.complete = !sh.aborted.load();
  out.nodes = sh.nodes.load();
  out.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  return out;
}

inline SearchResult to_result(const Instance& in, const RunOutput& o, const SearchOptions& opt) {
  SearchResult r;
  r.n = in.n;
  r.k = in.k;
  r.r = in.r;
  r.value = o.value;
  if (o.from_incumbent) {
    r.witness = *opt.incumbent;
  } else {
    std::vector<Subset> m;
    for (std::size_t i : o.witness) m.push_back(in.sets[i]);
    r.witness = UniformFamily(in.n, in.k, std::move(m));
  }
  r.warm_started = opt.incumbent.has_value();
  r.status = o.complete ? SearchStatus::ProvedOptimal : SearchStatus::TimeboxedLowerBound;
  r.nodes = o.nodes;
  r.elapsed = o.elapsed;
  r.budget = opt.budget;
  return r;
}

inline void check_search_params(int n, int k, int r) {
  if (k < 1 || n < 2 * k) throw std::invalid_argument("search needs k >= 1 and n >= 2k");
  if (r < 1 || r > 3) throw std::invalid_argument("r must be 1, 2 or 3");
}

}  // namespace detail

// m(n,k,r): maximum intersecting k-uniform family on [n] with covering number >= r.
inline SearchResult max_intersecting(int n, int k, int r, const SearchOptions& opt = {}) {
  detail::check_search_params(n, k, r);
  if (opt.incumbent) {
    const auto& f = *opt.incumbent;
    if (f.n() != n || f.k() != k || f.empty() || !is_intersecting(f) || tau(f) < r)
      throw std::invalid_argument("incumbent is not a feasible family for these parameters");
  }
  const auto in = detail::make_instance(n, k, r, 0);
  return detail::to_result(in, detail::run_search(in, opt, 0), opt);
}

// Maximum intersecting family with every element degree at most
// binom(n-1,k-1) - binom(n-l-1,k-1).
inline SearchResult max_intersecting_degcap(int n, int k, int ell, const SearchOptions& opt = {}) {
  if (ell < 2 || ell > k) throw std::invalid_argument("degree cap needs 2 <= l <= k");
  if (n <= 2 * k) throw std::invalid_argument("degree cap needs n > 2k");
  const auto cap = binom_u64(n - 1, k - 1) - binom_u64(n - ell - 1, k - 1);
  const auto in = detail::make_instance(n, k, 1, static_cast<int>(cap));
  auto res = detail::to_result(in, detail::run_search(in, opt, 0), opt);
  res.ell = ell;
  return res;
}

// All optimum families up to isomorphism. `value` must be the proved optimum.
inline OptimaResult enumerate_optima(int n, int k, int r, std::uint64_t value, const SearchOptions& opt = {}) {
  detail::check_search_params(n, k, r);
  if (value == 0) throw std::invalid_argument("enumerate_optima needs the optimum value");
  const auto in = detail::make_instance(n, k, r, 0);
  const auto o = detail::run_search(in, opt, value);
  OptimaResult out;
  out.value = value;
  out.forms.assign(o.collected.begin(), o.collected.end());
  out.complete = o.complete;
  out.nodes = o.nodes;
  out.elapsed = o.elapsed;
  return out;
}

// Value the closed forms predict for m(n,k,r), when one applies.
inline std::optional<BigInt> expected_m(int n, int k, int r) {
  if (r == 1) return binom(n - 1, k - 1);
  if (r == 2 && n > 2 * k) return hm_formula(n, k);
  if (r == 3 && k >= 3 && n >= 2 * k) return g_size_formula(n, k);
  return std::nullopt;
}

// Certificate for one search run. The witness is re-verified through the
// covers module; a proved optimum must also match the closed form.
inline Certificate search_certificate(const SearchResult& res) {
  Certificate c;
  c.id = "M-ORACLE";
  c.statement = res.ell ? "maximum intersecting family under the degree cap stays within the capped bound"
                        : "m(n,k,r) by exhaustive branch and bound agrees with the closed form";
  const auto& w = res.witness;
  if (w.size() != res.value) c.fail({{"step", "witness size differs from value"}});
  if (!is_intersecting(w)) c.fail({{"step", "witness not intersecting"}});
  if (!w.empty() && tau(w) < res.r) c.fail({{"step", "witness covering number below r"}, {"tau", tau(w)}});
  json params{{"n", res.n}, {"k", res.k}, {"r", res.r}};
  if (res.ell) {
    const int l = *res.ell;
    const BigInt cap = degcap_cap(res.n, res.k, l);
    const BigInt bound = degcap_bound(res.n, res.k, l);
    params["ell"] = l;
    params["degree_cap"] = cap.str();
    params["bound"] = bound.str();
    if (!w.empty() && BigInt(max_degree(w).degree) > cap) c.fail({{"step", "witness exceeds the degree cap"}});
    if (BigInt(res.value) > bound) c.fail({{"step", "value exceeds bound"}, {"value", res.value}});
  } else if (auto e = expected_m(res.n, res.k, res.r)) {
    params["expected"] = e->str();
    if (BigInt(res.value) > *e) c.fail({{"step", "value exceeds closed form"}, {"value", res.value}});
    if (res.status == SearchStatus::ProvedOptimal && BigInt(res.value) != *e)
      c.fail({{"step", "proved optimum differs from closed form"}, {"value", res.value}});
  }
  params["value"] = res.value;
  params["status"] = to_string(res.status);
  params["nodes"] = res.nodes;
  if (res.warm_started) params["warm_start"] = true;
  params["budget_ms"] = res.budget.time.count();
  json wit = json::array();
  for (Subset s : w) wit.push_back(s.elements());
  params["witness"] = wit;
  c.params = params;
  c.wall_time_ms = res.elapsed.count();
  return c;
}

}  // namespace ekrforge

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ekrforge/certificate.hpp"
#include "ekrforge/constructions.hpp"
#include "ekrforge/covers.hpp"
#include "ekrforge/exact.hpp"
#include "ekrforge/family.hpp"

namespace ekrforge {

// Optional overrides of a suite's default sweep.
struct SweepRange {
  std::optional<int> k_min;
  std::optional<int> k_max;
  std::optional<int> n_min;
  std::optional<int> n_max;
};

enum class Relation { Eq, Le, Lt, Ge, Gt };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::Eq: return "==";
    case Relation::Le: return "<=";
    case Relation::Lt: return "<";
    case Relation::Ge: return ">=";
    case Relation::Gt: return ">";
  }
  return "?";
}

inline bool holds(const BigInt& lhs, Relation r, const BigInt& rhs) {
  switch (r) {
    case Relation::Eq: return lhs == rhs;
    case Relation::Le: return lhs <= rhs;
    case Relation::Lt: return lhs < rhs;
    case Relation::Ge: return lhs >= rhs;
    case Relation::Gt: return lhs > rhs;
  }
  return false;
}

namespace detail {

// Evaluates one comparison at one parameter point, recording a witness on failure.
class Checker {
 public:
  explicit Checker(Certificate& cert) : cert_(cert) {}

  bool check(const std::string& step, const BigInt& lhs, Relation rel, const BigInt& rhs, json point) {
    ++count_;
    if (holds(lhs, rel, rhs)) return true;
    point["step"] = step;
    point["lhs"] = lhs.str();
    point["relation"] = to_string(rel);
    point["rhs"] = rhs.str();
    cert_.fail(std::move(point));
    return false;
  }

  std::size_t count() const { return count_; }

 private:
  Certificate& cert_;
  std::size_t count_ = 0;
};

inline json nk(int n, int k) { return json{{"n", n}, {"k", k}}; }

inline BigInt B(long long a, long long b) { return binom(a, b); }

inline BigInt big(long long v) { return BigInt(v); }

}  // namespace detail

// Hilton-Milner value binom(n-1,k-1) - binom(n-k-1,k-1) + 1.
inline BigInt hm_formula(int n, int k) { return binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1; }

inline BigInt ekr_formula(int n, int k) { return binom(n - 1, k - 1); }

// f(k) = binom(2k-3,k-1) - binom(2k-3,k-3) - 3k + 4.
inline BigInt gapfill_f(int k) { return binom(2 * k - 3, k - 1) - binom(2 * k - 3, k - 3) - 3 * k + 4; }

// Degree-capped bound: cap binom(n-1,k-1) - binom(n-l-1,k-1), size bound cap + binom(n-l-1,k-l).
inline BigInt degcap_cap(int n, int k, int l) { return binom(n - 1, k - 1) - binom(n - l - 1, k - 1); }
inline BigInt degcap_bound(int n, int k, int l) { return degcap_cap(n, k, l) + binom(n - l - 1, k - l); }

inline const std::vector<std::string>& identity_suite_ids() {
  static const std::vector<std::string> ids{"ID-G-SIZE",  "ID-G-POLY",      "ID-G-2K",      "ID-EKR",
                                            "ID-HM",      "ID-F-REC",       "INEQ-PROP23",  "INEQ-KEY-STEPS",
                                            "INEQ-GAPFILL", "INEQ-CASE1",   "INEQ-CASE2",   "ID-ENDGAME-94"};
  return ids;
}

namespace suites {

using detail::B;
using detail::big;
using detail::Checker;
using detail::nk;

inline Certificate g_size(const SweepRange& r) {
  const int k0 = r.k_min.value_or(3), k1 = r.k_max.value_or(8);
  return timed_certificate("ID-G-SIZE", "|G(n,k)| counted directly == closed form", [&](Certificate& c) {
    detail::Checker chk(c);
    for (int k = std::max(k0, 3); k <= k1; ++k) {
      const int n1 = r.n_max.value_or(2 * k + 12);
      for (int n = std::max(r.n_min.value_or(2 * k), 2 * k); n <= n1; ++n) {
        chk.check("count", big(static_cast<long long>(build_G(n, k).size())), Relation::Eq, g_size_formula(n, k),
                  nk(n, k));
      }
    }
    c.params = {{"k_min", k0}, {"k_max", k1}, {"n", "2k..2k+12"}, {"points", chk.count()}};
  });
}

inline Certificate g_poly(const SweepRange& r) {
  const int n1 = r.n_max.value_or(200);
  return timed_certificate(
      "ID-G-POLY", "|G(n,4)| = 13n-69; 2|G(n,5)| = 21n^2-295n+1102; 6|G(n,6)| = 31n^3-792n^2+7157n-22632",
      [&](Certificate& c) {
        detail::Checker chk(c);
        const int k0 = r.k_min.value_or(4), k1 = r.k_max.value_or(6);
        for (int k = std::max(k0, 4); k <= std::min(k1, 6); ++k) {
          const int start = std::max(r.n_min.value_or(2 * k + 1), 2 * k);
          for (long long n = start; n <= n1; ++n) {
            const BigInt g = g_size_formula(static_cast<int>(n), k);
            if (k == 4) chk.check("k=4", g, Relation::Eq, big(13 * n - 69), nk(static_cast<int>(n), k));
            if (k == 5)
              chk.check("k=5", 2 * g, Relation::Eq, big(21 * n * n - 295 * n + 1102), nk(static_cast<int>(n), k));
            if (k == 6)
              chk.check("k=6", 6 * g, Relation::Eq, big(31 * n * n * n - 792 * n * n + 7157 * n - 22632),
                        nk(static_cast<int>(n), k));
          }
        }
        c.params = {{"k", json::array({4, 5, 6})}, {"n_min", "2k+1"}, {"n_max", n1}, {"points", chk.count()}};
      });
}

inline Certificate g_2k(const SweepRange& r) {
  const int k1 = r.k_max.value_or(60);
  return timed_certificate("ID-G-2K", "|G(2k,k)| == binom(2k-1,k-1)", [&](Certificate& c) {
    detail::Checker chk(c);
    for (int k = std::max(r.k_min.value_or(3), 3); k <= k1; ++k)
      chk.check("n=2k", g_size_formula(2 * k, k), Relation::Eq, B(2 * k - 1, k - 1), json{{"k", k}});
    c.params = {{"k_min", 3}, {"k_max", k1}, {"points", chk.count()}};
  });
}

inline Certificate ekr(const SweepRange& r) {
  const int k0 = r.k_min.value_or(2), k1 = r.k_max.value_or(6);
  return timed_certificate("ID-EKR", "|full star| == binom(n-1,k-1) and EKR value >= HM value", [&](Certificate& c) {
    detail::Checker chk(c);
    for (int k = std::max(k0, 1); k <= k1; ++k) {
      const int n1 = r.n_max.value_or(2 * k + 8);
      for (int n = std::max(r.n_min.value_or(2 * k), 2 * k); n <= n1; ++n) {
        chk.check("star", big(static_cast<long long>(full_star(n, k).size())), Relation::Eq, ekr_formula(n, k),
                  nk(n, k));
        if (n > 2 * k) chk.check("ekr>=hm", ekr_formula(n, k), Relation::Ge, hm_formula(n, k), nk(n, k));
      }
    }
    c.params = {{"k_min", k0}, {"k_max", k1}, {"n", "2k..2k+8"}, {"points", chk.count()}};
  });
}

inline Certificate hm(const SweepRange& r) {
  const int k0 = r.k_min.value_or(2), k1 = r.k_max.value_or(6);
  return timed_certificate(
      "ID-HM", "|Hilton-Milner family| == binom(n-1,k-1)-binom(n-k-1,k-1)+1 and HM value >= |G(n,k)|",
      [&](Certificate& c) {
        detail::Checker chk(c);
        for (int k = std::max(k0, 2); k <= k1; ++k) {
          const int n1 = r.n_max.value_or(2 * k + 8);
          for (int n = std::max(r.n_min.value_or(2 * k + 1), 2 * k + 1); n <= n1; ++n) {
            // {F : 1 ∈ F, F ∩ [2,k+1] ≠ ∅} ∪ {[2,k+1]}
            const Subset top = Subset::interval(2, k + 1);
            std::size_t cnt = 1;
            for_each_subset_of_size(n, k, [&](Subset s) {
              if (s.contains(1) && s.meets(top)) ++cnt;
            });
            chk.check("hm-family", big(static_cast<long long>(cnt)), Relation::Eq, hm_formula(n, k), nk(n, k));
            if (k >= 3) chk.check("hm>=g", hm_formula(n, k), Relation::Ge, g_size_formula(n, k), nk(n, k));
          }
        }
        c.params = {{"k_min", k0}, {"k_max", k1}, {"n", "2k+1..2k+8"}, {"points", chk.count()}};
      });
}

inline Certificate f_rec(const SweepRange& r) {
  const int k1 = r.k_max.value_or(200);
  return timed_certificate(
      "ID-F-REC",
      "f(k) = binom(2k-3,k-1)-binom(2k-3,k-3)-3k+4: f(5)=3, f(k+1)-f(k) = binom(2k-3,k-1)-binom(2k-3,k-4)-3, f(k)>=0",
      [&](Certificate& c) {
        detail::Checker chk(c);
        chk.check("f(5)", gapfill_f(5), Relation::Eq, big(3), json{{"k", 5}});
        BigInt by_rec = gapfill_f(5);
        for (int k = 5; k <= k1; ++k) {
          const BigInt fk = gapfill_f(k);
          chk.check("recurrence-chain", by_rec, Relation::Eq, fk, json{{"k", k}});
          chk.check("nonneg", fk, Relation::Ge, big(0), json{{"k", k}});
          if (k < k1) {
            const BigInt step = B(2 * k - 3, k - 1) - B(2 * k - 3, k - 4) - 3;
            chk.check("recurrence", gapfill_f(k + 1) - fk, Relation::Eq, step, json{{"k", k}});
            // step = 6(k-1)/(k(k+1)) binom(2k-3,k-1) - 3 > 0
            chk.check("closed-step", big(1LL * k * (k + 1)) * (step + 3), Relation::Eq,
                      big(6LL * (k - 1)) * B(2 * k - 3, k - 1), json{{"k", k}});
            chk.check("step>0", step, Relation::Gt, big(0), json{{"k", k}});
            by_rec += step;
          }
        }
        c.params = {{"k_min", 5}, {"k_max", k1}, {"f(5)", gapfill_f(5).str()}, {"points", chk.count()}};
      });
}

inline Certificate prop23(const SweepRange& r) {
  const int k0 = r.k_min.value_or(3), k1 = r.k_max.value_or(12);
  return timed_certificate(
      "INEQ-PROP23",
      "3(binom(n-4,k-2)-binom(n-k-2,k-2)+1)+4binom(n-4,k-3)+binom(n-4,k-4) < |G(n,k)| for n > 2k >= 6",
      [&](Certificate& c) {
        detail::Checker chk(c);
        for (int k = std::max(k0, 3); k <= k1; ++k) {
          const int n1 = r.n_max.value_or(2 * k + 60);
          for (int n = std::max(r.n_min.value_or(2 * k + 1), 2 * k + 1); n <= n1; ++n) {
            const BigInt lhs =
                3 * (B(n - 4, k - 2) - B(n - k - 2, k - 2) + 1) + 4 * B(n - 4, k - 3) + B(n - 4, k - 4);
            chk.check("strict", lhs, Relation::Lt, g_size_formula(n, k), nk(n, k));
          }
        }
        c.params = {{"k_min", k0}, {"k_max", k1}, {"n", "2k+1..2k+60"}, {"strict", true}, {"points", chk.count()}};
      });
}

inline Certificate key_steps(const SweepRange& r) {
  const int k0 = r.k_min.value_or(4), k1 = r.k_max.value_or(12);
  return timed_certificate(
      "INEQ-KEY-STEPS",
      "binom(n-u,k-2)-binom(n-k-u+2,k-2) >= binom(n-u-1,k-3)+binom(n-u-2,k-3) (k>=4); "
      "binom(n-u-1,k-u+2) >= binom(n-u-2,k-4) (u in {5,6}); n >= 2k+u-4",
      [&](Certificate& c) {
        detail::Checker chk(c);
        for (int k = std::max(k0, 4); k <= k1; ++k)
          for (int u : {5, 6}) {
            const int n1 = r.n_max.value_or(2 * k + 60);
            for (int n = std::max(r.n_min.value_or(2 * k + u - 4), 2 * k + u - 4); n <= n1; ++n) {
              json pt = nk(n, k);
              pt["u"] = u;
              const BigInt head = B(n - u, k - 2) - B(n - k - u + 2, k - 2);
              chk.check("pascal-step", head, Relation::Ge, B(n - u - 1, k - 3) + B(n - u - 2, k - 3), pt);
              chk.check("tail", B(n - u - 1, k - u + 2), Relation::Ge, B(n - u - 2, k - 4), pt);
              // the comparison both steps feed
              chk.check("combined", head + B(n - u, k - u + 2) + B(n - u - 1, k - u + 1), Relation::Ge,
                        2 * B(n - u - 1, k - 3) + 2 * B(n - u - 1, k - u + 1), pt);
            }
          }
        c.params = {{"k_min", k0}, {"k_max", k1}, {"u", json::array({5, 6})}, {"n", "2k+u-4..2k+60"},
                    {"points", chk.count()}};
      });
}

inline Certificate gapfill(const SweepRange& r) {
  const int k1 = r.k_max.value_or(200);
  return timed_certificate(
      "INEQ-GAPFILL",
      "n = 2k+1: |G(n,k)| = binom(n-1,k-1)-3k+4 and binom(n-1,k-1)-binom(n-4,k-1)+binom(n-4,k-3) <= |G(n,k)|",
      [&](Certificate& c) {
        detail::Checker chk(c);
        for (int k = std::max(r.k_min.value_or(5), 5); k <= k1; ++k) {
          const int n = 2 * k + 1;
          const json pt = nk(n, k);
          const BigInt g = g_size_formula(n, k);
          chk.check("g-at-2k+1", g, Relation::Eq, B(n - 1, k - 1) - 3 * k + 4, pt);
          const BigInt capped = B(n - 1, k - 1) - B(n - 4, k - 1) + B(n - 4, k - 3);
          chk.check("substitution", capped, Relation::Eq, B(n - 1, k - 1) - B(2 * k - 3, k - 1) + B(2 * k - 3, k - 3),
                    pt);
          chk.check("capped<=g", capped, Relation::Le, g, pt);
          chk.check("f>=0", gapfill_f(k), Relation::Ge, big(0), pt);
          chk.check("f-equivalence", g - capped, Relation::Eq, gapfill_f(k), pt);
        }
        c.params = {{"k_min", 5}, {"k_max", k1}, {"n", "2k+1"}, {"points", chk.count()}};
      });
}

inline Certificate case1(const SweepRange& r) {
  const int n1 = r.n_max.value_or(200);
  return timed_certificate(
      "INEQ-CASE1",
      "R-case bounds: k=5 (n>=13) 1/2(16n^2-196n+636) < |G(n,5)|; k=6 (n>=14) 1/6(19n^3-408n^2+3107n-8322) < "
      "|G(n,6)|; alternates k=5 n in {11,12}, k=6 n=13; k=4 total 13n-69",
      [&](Certificate& c) {
        detail::Checker chk(c);
        // Pascal steps used in the chain, k = 4,5,6.
        for (int k = 4; k <= 6; ++k)
          for (int n = 2 * k + 1; n <= n1; ++n) {
            const json pt = nk(n, k);
            chk.check("new1", B(n - 6, k - 3) + B(n - 6, k - 4), Relation::Eq, B(n - 5, k - 3), pt);
            chk.check("4.4", B(n - 5, k - 2) - B(n - k - 3, k - 2) + B(n - 5, k - 3) + B(n - 6, k - 4), Relation::Eq,
                      B(n - 4, k - 2) - B(n - k - 3, k - 2) + B(n - 6, k - 4), pt);
            chk.check("regroup", 4 * B(n - 5, k - 3) + 5 * B(n - 5, k - 4), Relation::Eq,
                      4 * B(n - 4, k - 3) + B(n - 5, k - 4), pt);
          }
        auto total = [](int n, int k) {
          return 3 * (B(n - 4, k - 2) - B(n - k - 3, k - 2)) + 4 * B(n - 4, k - 3) + B(n - 5, k - 4) +
                 3 * B(n - 6, k - 4) + B(n - 5, k - 5);
        };
        for (long long n = 13; n <= n1; ++n) {
          const int ni = static_cast<int>(n);
          const BigInt p2 = big(16 * n * n - 196 * n + 636);
          chk.check("k5-poly", 2 * total(ni, 5), Relation::Eq, p2, nk(ni, 5));
          chk.check("k5-strict", p2, Relation::Lt, 2 * g_size_formula(ni, 5), nk(ni, 5));
        }
        for (long long n = 14; n <= n1; ++n) {
          const int ni = static_cast<int>(n);
          const BigInt p6 = big(19 * n * n * n - 408 * n * n + 3107 * n - 8322);
          chk.check("k6-poly", 6 * total(ni, 6), Relation::Eq, p6, nk(ni, 6));
          chk.check("k6-strict", p6, Relation::Lt, 6 * g_size_formula(ni, 6), nk(ni, 6));
        }
        auto alt = [](int n, int k) {
          return 3 * B(n - 5, k - 2) + 7 * B(n - 5, k - 3) + 5 * B(n - 5, k - 4) + B(n - 5, k - 5);
        };
        for (long long n : {11LL, 12LL}) {
          const int ni = static_cast<int>(n);
          const BigInt p = big(n * n * n - 11 * n * n + 40 * n - 48);
          chk.check("k5-alt-poly", 2 * alt(ni, 5), Relation::Eq, p, nk(ni, 5));
          chk.check("k5-alt-strict", p, Relation::Lt, 2 * g_size_formula(ni, 5), nk(ni, 5));
        }
        {
          const long long n = 13;
          const BigInt p = big(3 * n * n * n * n - 50 * n * n * n + 309 * n * n - 838 * n + 840);
          chk.check("k6-alt-poly", 24 * alt(13, 6), Relation::Eq, p, nk(13, 6));
          chk.check("k6-alt-strict", p, Relation::Lt, 24 * g_size_formula(13, 6), nk(13, 6));
        }
        for (long long n = 9; n <= n1; ++n) {
          const int ni = static_cast<int>(n);
          const BigInt f23 = big(9 * (n - 6) + (n - 5)) + (B(5, 3) - 7) * big(n - 5);
          chk.check("k4-layers23", f23, Relation::Eq, big(13 * n - 74), nk(ni, 4));
          chk.check("k4-total", f23 + B(5, 4), Relation::Eq, g_size_formula(ni, 4), nk(ni, 4));
        }
        c.params = {{"n_max", n1}, {"strict", true}, {"points", chk.count()}};
      });
}

inline Certificate case2(const SweepRange& r) {
  const int n1 = r.n_max.value_or(200);
  return timed_certificate(
      "INEQ-CASE2",
      "S-case bounds: k=5 (n>=12) 1/2(19n^2-259n+948) < |G(n,5)|; k=6 (n>=14) 1/6(22n^3-516n^2+4328n-12786) < "
      "|G(n,6)|; k=4 (n>=10) 10n-45 < 13n-69",
      [&](Certificate& c) {
        detail::Checker chk(c);
        auto total = [](int n, int k) {
          return 3 * (B(n - 6, k - 2) - B(n - k - 4, k - 2)) + B(n - 3, k - 3) + 3 * B(n - 4, k - 3) +
                 6 * B(n - 5, k - 3) - 3 * B(n - 7, k - 4);
        };
        for (int k = 4; k <= 6; ++k)
          for (int n = 2 * k + 2; n <= n1; ++n) {
            const BigInt expanded = 10 * B(n - 6, k - 3) + 12 * B(n - 6, k - 4) + 3 * B(n - 7, k - 5) +
                                    6 * B(n - 6, k - 5) + B(n - 6, k - 6);
            chk.check("regroup", expanded, Relation::Eq,
                      B(n - 3, k - 3) + 3 * B(n - 4, k - 3) + 6 * B(n - 5, k - 3) - 3 * B(n - 7, k - 4), nk(n, k));
          }
        for (long long n = 12; n <= n1; ++n) {
          const int ni = static_cast<int>(n);
          const BigInt p = big(19 * n * n - 259 * n + 948);
          chk.check("k5-poly", 2 * total(ni, 5), Relation::Eq, p, nk(ni, 5));
          chk.check("k5-strict", p, Relation::Lt, 2 * g_size_formula(ni, 5), nk(ni, 5));
        }
        for (long long n = 14; n <= n1; ++n) {
          const int ni = static_cast<int>(n);
          const BigInt p = big(22 * n * n * n - 516 * n * n + 4328 * n - 12786);
          chk.check("k6-poly", 6 * total(ni, 6), Relation::Eq, p, nk(ni, 6));
          chk.check("k6-strict", p, Relation::Lt, 6 * g_size_formula(ni, 6), nk(ni, 6));
        }
        for (long long n = 9; n <= n1; ++n) {
          const int ni = static_cast<int>(n);
          for (int t = 0; t <= 4; ++t)
            chk.check("k4-F3", big(t * (n - 8) + 20), Relation::Le, big(4 * n - 12),
                      json{{"n", ni}, {"k", 4}, {"|T|", t}});
          if (n >= 10) {
            const BigInt f24 = 3 * (B(ni - 6, 2) - B(ni - 8, 2)) + 12 * B(ni - 6, 0) + 3 * B(ni - 7, -1);
            chk.check("k4-F2F4", f24, Relation::Eq, big(6 * n - 33), nk(ni, 4));
            chk.check("k4-strict", big(6 * n - 33 + 4 * n - 12), Relation::Lt, g_size_formula(ni, 4), nk(ni, 4));
          }
        }
        c.params = {{"n_max", n1}, {"strict", true}, {"points", chk.count()}};
      });
}

inline Certificate endgame94(const SweepRange&) {
  return timed_certificate("ID-ENDGAME-94", "n = 9, k = 4 endgame arithmetic of the S case", [&](Certificate& c) {
    detail::Checker chk(c);
    const json pt = nk(9, 4);
    const BigInt g94 = g_size_formula(9, 4);
    chk.check("3*5+binom(6,4)-6", 15 + B(6, 4) - 6, Relation::Eq, big(24), pt);
    chk.check("24+4*9-12", big(24 + 4 * 9 - 12), Relation::Eq, big(48), pt);
    chk.check("48=|G(9,4)|", big(48), Relation::Eq, g94, pt);
    chk.check("3*6+binom(6,4)-6", 18 + B(6, 4) - 6, Relation::Eq, big(27), pt);
    for (int t = 0; t <= 4; ++t) {
      json p = pt;
      p["|T|"] = t;
      chk.check("|T|(n-6)+(10-2-|T|)2", big(t * 3 + (10 - 2 - t) * 2), Relation::Eq, big(t * 1 + 16), p);
      chk.check("|T|(n-8)+16<=20", big(t * 1 + 16), Relation::Le, big(4 * 9 - 16), p);
      chk.check("equality-case F3<=22", big(t * 3 + (10 - t) * 2 - 2), Relation::Le, big(22), p);
    }
    chk.check("4n-16=20", big(4 * 9 - 16), Relation::Eq, big(20), pt);
    chk.check("27+20<48", big(27 + 20), Relation::Lt, g94, pt);
    chk.check("24+22<48", big(24 + 22), Relation::Lt, g94, pt);
    c.params = {{"n", 9}, {"k", 4}, {"points", chk.count()}};
  });
}

}  // namespace suites

// Runs one named closed-form suite over its default grid (or the overrides).
inline Certificate verify_identity_suite(const std::string& id, const SweepRange& range = {}) {
  static const std::map<std::string, std::function<Certificate(const SweepRange&)>> table{
      {"ID-G-SIZE", suites::g_size},     {"ID-G-POLY", suites::g_poly},        {"ID-G-2K", suites::g_2k},
      {"ID-EKR", suites::ekr},           {"ID-HM", suites::hm},                {"ID-F-REC", suites::f_rec},
      {"INEQ-PROP23", suites::prop23},   {"INEQ-KEY-STEPS", suites::key_steps}, {"INEQ-GAPFILL", suites::gapfill},
      {"INEQ-CASE1", suites::case1},     {"INEQ-CASE2", suites::case2},        {"ID-ENDGAME-94", suites::endgame94}};
  auto it = table.find(id);
  if (it == table.end()) throw std::invalid_argument("unknown suite id '" + id + "'");
  return it->second(range);
}

// ---------------------------------------------------------------------------
// Cross-intersecting oracles
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr int kMaxOracleSets = 24;

inline void require_enumerable(int n, int a, const char* what) {
  const auto cnt = binom_u64(n, a);
  if (cnt > static_cast<std::uint64_t>(kMaxOracleSets)) {
    throw std::length_error(std::string(what) + ": refusing to enumerate 2^" + std::to_string(cnt) +
                            " subfamilies of binom([" + std::to_string(n) + "]," + std::to_string(a) +
                            "); limit is 2^" + std::to_string(kMaxOracleSets));
  }
}

// For every b-set j, the bitmask of a-sets it meets.
inline std::vector<std::uint32_t> meet_masks(const std::vector<Subset>& as, const std::vector<Subset>& bs) {
  std::vector<std::uint32_t> out(bs.size(), 0);
  for (std::size_t j = 0; j < bs.size(); ++j)
    for (std::size_t i = 0; i < as.size(); ++i)
      if (as[i].meets(bs[j])) out[j] |= std::uint32_t{1} << i;
  return out;
}

// |B_max(A)|: number of b-sets meeting every member of A.
inline int bmax_count(std::uint32_t a, const std::vector<std::uint32_t>& meet) {
  int c = 0;
  for (std::uint32_t m : meet) c += (a & ~m) == 0 ? 1 : 0;
  return c;
}

inline UniformFamily pick(int n, int k, const std::vector<Subset>& sets, std::uint64_t mask) {
  std::vector<Subset> out;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if ((mask >> i) & 1U) out.push_back(sets[i]);
  return UniformFamily(n, k, std::move(out));
}

inline json family_json(const UniformFamily& f) {
  json arr = json::array();
  for (Subset s : f) arr.push_back(s.elements());
  return arr;
}

}  // namespace detail

struct OracleOutcome {
  std::uint64_t max_value = 0;
  Certificate certificate;
};

// max |A| + |B| over non-empty cross-intersecting A ⊆ binom([n],a),
// B ⊆ binom([n],b), by enumerating A and taking B = B_max(A).
inline OracleOutcome ft92_oracle(int n, int a, int b) {
  if (a < 1 || a > b || n < a + b) throw std::invalid_argument("ft92_oracle needs 1 <= a <= b and n >= a + b");
  detail::require_enumerable(n, a, "ft92_oracle");
  OracleOutcome out;
  out.certificate = timed_certificate(
      "FT92", "|A|+|B| <= binom(n,b)-binom(n-a,b)+1 for non-empty cross-intersecting A, B", [&](Certificate& c) {
        const auto as = all_subsets_of_size(n, a);
        const auto bs = all_subsets_of_size(n, b);
        const auto meet = detail::meet_masks(as, bs);
        const BigInt bound = binom(n, b) - binom(n - a, b) + 1;
        std::uint64_t best = 0, best_both = 0;
        std::uint32_t arg = 0;
        const std::uint32_t lim = std::uint32_t{1} << as.size();
        for (std::uint32_t am = 1; am < lim; ++am) {
          const int bm = detail::bmax_count(am, meet);
          if (bm == 0) continue;
          const std::uint64_t v = static_cast<std::uint64_t>(std::popcount(am) + bm);
          if (v > best) {
            best = v;
            arg = am;
          }
          if (std::popcount(am) > 1 && bm > 1) best_both = std::max(best_both, v);
        }
        // B_max(A) must be cross-intersecting with A and maximal.
        const auto fa = detail::pick(n, a, as, arg);
        std::vector<Subset> bmax;
        for (std::size_t j = 0; j < bs.size(); ++j)
          if ((arg & ~meet[j]) == 0) bmax.push_back(bs[j]);
        const UniformFamily fb(n, b, bmax);
        if (!are_cross_intersecting(fa, fb)) c.fail({{"step", "B_max not cross-intersecting"}});
        for (Subset s : bs)
          if (!fb.contains(s) && is_cover(s, fa)) c.fail({{"step", "B_max not maximal"}, {"set", s.elements()}});

        detail::Checker chk(c);
        chk.check("attained", BigInt(best), Relation::Eq, bound, json{{"n", n}, {"a", a}, {"b", b}});
        const bool exempt = (n == a + b) || (a == 2 && b == 2);
        if (!exempt && best_both > 0)
          chk.check("strict(|A|,|B|>1)", BigInt(best_both), Relation::Lt, bound, json{{"n", n}, {"a", a}, {"b", b}});
        out.max_value = best;
        c.params = {{"n", n},
                    {"a", a},
                    {"b", b},
                    {"bound", bound.str()},
                    {"max", best},
                    {"max_with_both_gt1", best_both},
                    {"strictness_applies", !exempt},
                    {"argmax_A", detail::family_json(fa)}};
      });
  return out;
}

// Hypothesis-restricted maximum for the Hilton corollary: cross-intersecting
// A ⊆ binom([m],a), B ⊆ binom([m],b), m > a+b, a > b, with
// |B| >= binom(m-1,b-1) or |A| <= binom(m-1,a-1).
inline OracleOutcome hilton_corollary_oracle(int m, int a, int b) {
  if (!(a > b) || b < 1 || m <= a + b)
    throw std::invalid_argument("hilton_corollary_oracle needs a > b >= 1 and m > a + b");
  detail::require_enumerable(m, a, "hilton_corollary_oracle");
  OracleOutcome out;
  out.certificate = timed_certificate(
      "HILTON-COR", "|A|+|B| <= binom(m-1,a-1)+binom(m-1,b-1) under |B| >= binom(m-1,b-1) or |A| <= binom(m-1,a-1)",
      [&](Certificate& c) {
        const auto as = all_subsets_of_size(m, a);
        const auto bs = all_subsets_of_size(m, b);
        const auto meet = detail::meet_masks(as, bs);
        const auto a_cap = binom_u64(m - 1, a - 1);
        const auto b_floor = binom_u64(m - 1, b - 1);
        const BigInt bound = binom(m - 1, a - 1) + binom(m - 1, b - 1);
        std::uint64_t best = 0;
        std::uint32_t arg = 0;
        const std::uint64_t lim = std::uint64_t{1} << as.size();
        for (std::uint64_t am = 0; am < lim; ++am) {
          const auto a32 = static_cast<std::uint32_t>(am);
          const auto sa = static_cast<std::uint64_t>(std::popcount(a32));
          const auto sb = static_cast<std::uint64_t>(detail::bmax_count(a32, meet));
          // A with B_max(A) satisfies the hypothesis iff one of the two size conditions holds.
          if (sa <= a_cap || sb >= b_floor) {
            if (sa + sb > best) {
              best = sa + sb;
              arg = a32;
            }
          }
        }
        detail::Checker chk(c);
        chk.check("bound", BigInt(best), Relation::Le, bound, json{{"m", m}, {"a", a}, {"b", b}});
        out.max_value = best;
        c.params = {{"m", m},
                    {"a", a},
                    {"b", b},
                    {"bound", bound.str()},
                    {"attained", best},
                    {"argmax_A", detail::family_json(detail::pick(m, a, as, arg))}};
      });
  return out;
}

namespace detail {

// max_t[s] = largest t with L(n,a,s), L(n,b,t) cross-intersecting.
inline std::vector<std::size_t> lex_cross_table(int n, int a, int b) {
  const auto la = lex_order(n, a);
  const auto lb = lex_order(n, b);
  std::vector<std::size_t> max_t(la.size() + 1, lb.size());
  for (std::size_t s = 1; s <= la.size(); ++s) {
    std::size_t first_disjoint = lb.size();
    for (std::size_t j = 0; j < lb.size(); ++j)
      if (!la[s - 1].meets(lb[j])) {
        first_disjoint = j;
        break;
      }
    max_t[s] = std::min(max_t[s - 1], first_disjoint);
  }
  return max_t;
}

}  // namespace detail

// Lexicographic normal form for cross-intersecting pairs: whenever (A,B) is
// cross-intersecting with n >= a+b, so is (L(n,a,|A|), L(n,b,|B|)).
// samples == 0 means exhaustive over all pairs.
inline Certificate hilton_lemma_check(int n, int a, int b, std::uint64_t samples = 0, std::uint64_t seed = 0) {
  if (a < 1 || b < 1 || n < a + b) throw std::invalid_argument("hilton_lemma_check needs n >= a + b");
  detail::require_enumerable(n, a, "hilton_lemma_check");
  if (binom_u64(n, b) > 32) throw std::length_error("hilton_lemma_check: binom(n,b) > 32");
  return timed_certificate("HILTON-LEMMA", "(A,B) cross-intersecting => (L(n,a,|A|), L(n,b,|B|)) cross-intersecting",
                           [&](Certificate& c) {
                             const auto as = all_subsets_of_size(n, a);
                             const auto bs = all_subsets_of_size(n, b);
                             const auto meet = detail::meet_masks(as, bs);
                             // compat[A] = bitmask of b-sets meeting every member of A.
                             auto compat = [&](std::uint32_t am) {
                               std::uint64_t cm = 0;
                               for (std::size_t j = 0; j < bs.size(); ++j)
                                 if ((am & ~meet[j]) == 0) cm |= std::uint64_t{1} << j;
                               return cm;
                             };
                             const auto max_t = detail::lex_cross_table(n, a, b);
                             std::uint64_t pairs = 0;
                             auto test = [&](std::uint32_t am, std::uint64_t bm) {
                               ++pairs;
                               const auto sa = static_cast<std::size_t>(std::popcount(am));
                               const auto sb = static_cast<std::size_t>(std::popcount(bm));
                               if (sb > max_t[sa])
                                 c.fail({{"A", detail::family_json(detail::pick(n, a, as, am))},
                                         {"B", detail::family_json(detail::pick(n, b, bs, bm))}});
                             };
                             if (samples == 0) {
                               const std::uint64_t lim = std::uint64_t{1} << as.size();
                               for (std::uint64_t am = 0; am < lim; ++am) {
                                 const auto a32 = static_cast<std::uint32_t>(am);
                                 const std::uint64_t cm = compat(a32);
                                 // every submask of cm, including the empty one
                                 for (std::uint64_t bm = cm;; bm = (bm - 1) & cm) {
                                   test(a32, bm);
                                   if (bm == 0) break;
                                 }
                               }
                             } else {
                               std::mt19937_64 rng(seed);
                               for (std::uint64_t i = 0; i < samples; ++i) {
                                 std::uniform_int_distribution<std::size_t> size_a(1, as.size());
                                 std::vector<std::size_t> idx(as.size());
                                 for (std::size_t t = 0; t < idx.size(); ++t) idx[t] = t;
                                 std::shuffle(idx.begin(), idx.end(), rng);
                                 std::uint32_t am = 0;
                                 const std::size_t sa = size_a(rng);
                                 for (std::size_t t = 0; t < sa; ++t) am |= std::uint32_t{1} << idx[t];
                                 const std::uint64_t cm = compat(am);
                                 std::uniform_real_distribution<double> dens(0.0, 1.0);
                                 const double p = dens(rng);
                                 std::uint64_t bm = 0;
                                 for (std::size_t j = 0; j < bs.size(); ++j)
                                   if (((cm >> j) & 1U) && dens(rng) < p) bm |= std::uint64_t{1} << j;
                                 test(am, bm);
                               }
                             }
                             c.params = {{"n", n}, {"a", a}, {"b", b}, {"mode", samples == 0 ? "exhaustive" : "random"},
                                         {"seed", seed}, {"pairs_checked", pairs}};
                           });
}

// ---------------------------------------------------------------------------
// Trace bounds for intersecting families with covering number >= 3
// ---------------------------------------------------------------------------

struct TraceBoundCounts {
  std::size_t prop31 = 0, prop32 = 0, prop33 = 0, prop34 = 0, prop34_equality = 0, sperner = 0, prop36 = 0;
};

namespace detail {

inline std::vector<std::pair<Subset, Subset>> disjoint_pairs_in(Subset u) {
  std::vector<Subset> ps;
  for (Subset p : all_subsets_of_size(u.max_element(), 2))
    if (p.subset_of(u)) ps.push_back(p);
  std::vector<std::pair<Subset, Subset>> out;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (!ps[i].meets(ps[j])) out.emplace_back(ps[i], ps[j]);
  return out;
}

inline std::vector<Subset> subsets_of(Subset u) {
  std::vector<Subset> out;
  const Mask m = u.bits();
  for (Mask s = m;; s = (s - 1) & m) {
    out.push_back(Subset(s));
    if (s == 0) break;
  }
  return out;
}

}  // namespace detail

// Evaluates every applicable trace inequality on trace(F, U). Statements
// whose hypotheses fail are listed under params.skipped, never failed.
// `known_tau` avoids recomputing the covering number.
inline Certificate trace_bound_check(const UniformFamily& f, Subset u,
                                     std::optional<std::vector<std::pair<Subset, Subset>>> pairs = std::nullopt,
                                     std::optional<int> known_tau = std::nullopt,
                                     TraceBoundCounts* counts = nullptr) {
  return timed_certificate("TRACE-BOUNDS", "trace inequalities on F(S,U)", [&](Certificate& c) {
    using detail::B;
    TraceBoundCounts local;
    TraceBoundCounts& cnt = counts ? *counts : local;
    json skipped = json::array();
    const int n = f.n(), k = f.k(), us = u.size();
    json base{{"U", u.elements()}, {"n", n}, {"k", k}};
    if (!is_intersecting(f)) {
      skipped.push_back("family not intersecting: nothing applies");
      c.params = {{"U", u.elements()}, {"skipped", skipped}};
      return;
    }
    const int t = f.empty() ? 0 : known_tau.value_or(tau(f));
    const auto tr = trace(f, u);
    const bool two_hit = std::all_of(f.begin(), f.end(), [u](Subset s) { return (s & u).size() >= 2; });
    const bool tau3 = t >= 3;
    const auto dp = pairs.value_or(detail::disjoint_pairs_in(u));
    auto fv = [&](Subset s) { return BigInt(tr.f(s)); };
    detail::Checker chk(c);
    auto pt = [&](const char* stmt, Subset p, Subset q) {
      json j = base;
      j["statement"] = stmt;
      j["P"] = p.elements();
      j["P'"] = q.elements();
      return j;
    };

    const bool core = tau3 && two_hit;
    if (!tau3) skipped.push_back("tau(F) < 3: trace propositions skipped");
    if (!two_hit) skipped.push_back("some member meets U in fewer than 2 points: trace propositions skipped");

    const bool tops_ok = n - k - us + 2 >= 0;
    if (core && tops_ok) {
      const BigInt r31 = B(n - us, k - 2) - B(n - k - us + 2, k - 2);
      for (Subset p : all_subsets_of_size(u.max_element(), 2)) {
        if (!p.subset_of(u)) continue;
        ++cnt.prop31;
        chk.check("3.1", fv(p), Relation::Le, r31, pt("f_P bound", p, Subset(0)));
      }
      if (n >= 2 * k + us - 4) {
        for (auto [p, q] : dp) {
          ++cnt.prop32;
          chk.check("3.2", fv(p) + fv(q), Relation::Le, r31 + 1, pt("f_P + f_P' bound", p, q));
        }
      } else {
        skipped.push_back("3.2 needs n >= 2k+|U|-4");
      }
      if ((us == 5 || us == 6) && n >= 2 * k + us - 4) {
        const BigInt rhs = r31 + B(n - us, k - us + 2) + B(n - us - 1, k - us + 1);
        for (auto [p, q] : dp) {
          ++cnt.prop33;
          chk.check("3.3", fv(p) + fv(q) + fv(u - p) + fv(u - q), Relation::Le, rhs, pt("four-trace key bound", p, q));
        }
      }
    }
    if (core && k == 4 && us == 5 && n >= 9) {
      const BigInt rhs = 3 * (n - 6);
      for (auto [p, q] : dp) {
        ++cnt.prop34;
        const BigInt sum = fv(p) + fv(q) + fv(u - p) + fv(u - q);
        chk.check("3.4", sum, Relation::Le, rhs, pt("k=4 sharp bound 3(n-6)", p, q));
        if (sum == rhs) {
          ++cnt.prop34_equality;
          const BigInt e = 2 * n - 13;
          const bool ok = (fv(p) == 0 && fv(q) == e) || (fv(q) == 0 && fv(p) == e);
          if (!ok) {
            json w = pt("3.4 equality characterization", p, q);
            w["f_P"] = fv(p).str();
            w["f_P'"] = fv(q).str();
            c.fail(w);
          }
        }
      }
    }
    if (core && us == 5 && n > 2 * k) {
      const BigInt rhs = B(n - 5, k - 2) + B(n - 5, k - 3);
      for (auto [p, q] : dp) {
        ++cnt.prop36;
        chk.check("3.6", fv(p) + fv(q) + fv(u - p) + fv(u - q), Relation::Le, rhs, pt("Sperner-derived bound", p, q));
      }
    }

    // Sperner-type inequality: intersecting suffices.
    const auto subs = detail::subsets_of(u);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const Subset a = subs[i];
      if (a.empty()) continue;
      for (std::size_t j = i + 1; j < subs.size(); ++j) {
        const Subset b = subs[j];
        if (b.empty() || a.meets(b)) continue;
        if (n < 2 * k - a.size() - b.size() + us) continue;
        const BigInt da = B(n - us, k - a.size());
        const BigInt db = B(n - us, k - b.size());
        if (da == 0 || db == 0) continue;
        ++cnt.sperner;
        // alpha(A) + alpha(B) <= 1, cleared of denominators
        chk.check("3.5", fv(a) * db + fv(b) * da, Relation::Le, da * db, pt("alpha(A)+alpha(B) <= 1", a, b));
      }
    }
    c.params = {{"U", u.elements()},   {"n", n},
                {"k", k},              {"tau", t},
                {"two_hit", two_hit},  {"checks", chk.count()},
                {"skipped", skipped}};
  });
}

}  // namespace ekrforge

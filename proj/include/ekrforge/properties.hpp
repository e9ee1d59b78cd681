#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ekrforge/bounds.hpp"
#include "ekrforge/certificate.hpp"
#include "ekrforge/constructions.hpp"
#include "ekrforge/covers.hpp"
#include "ekrforge/family.hpp"
#include "ekrforge/structure.hpp"

namespace ekrforge {

// Saturates the empty family along a uniformly shuffled order of all k-sets.
// Every maximal intersecting family arises this way with positive probability.
inline UniformFamily random_saturated_family(int n, int k, std::mt19937_64& rng) {
  auto order = all_subsets_of_size(n, k);
  std::shuffle(order.begin(), order.end(), rng);
  return saturate_in_order(UniformFamily(n, k, {}), order);
}

// Same, but the k-sets meeting a random 3-set T come first in the order.
// This biases towards covering number 3, which the uniform order rarely
// produces once n is around 2k+1 and k >= 5.
inline UniformFamily random_saturated_family_near_cover(int n, int k, std::mt19937_64& rng) {
  auto triples = all_subsets_of_size(n, 3);
  std::uniform_int_distribution<std::size_t> pick(0, triples.size() - 1);
  const Subset t = triples[pick(rng)];
  auto order = all_subsets_of_size(n, k);
  std::shuffle(order.begin(), order.end(), rng);
  std::stable_partition(order.begin(), order.end(), [t](Subset s) { return s.meets(t); });
  return saturate_in_order(UniformFamily(n, k, {}), order);
}

enum class Sampler { Uniform, NearCover };

struct SampledFamily {
  UniformFamily family;
  int tau;
};

// Rejection sampling of saturated families with covering number >= min_tau.
inline SampledFamily random_saturated_family_with_tau(int n, int k, int min_tau, std::mt19937_64& rng,
                                                     Sampler sampler = Sampler::Uniform, int max_attempts = 100000) {
  for (int i = 0; i < max_attempts; ++i) {
    auto f = sampler == Sampler::Uniform ? random_saturated_family(n, k, rng)
                                         : random_saturated_family_near_cover(n, k, rng);
    const int t = tau(f);
    if (t >= min_tau) return {std::move(f), t};
  }
  throw std::runtime_error("no saturated family with tau >= " + std::to_string(min_tau) + " after " +
                           std::to_string(max_attempts) + " attempts");
}

namespace detail {

inline bool every_member_hits_twice(const UniformFamily& f, Subset u) {
  return std::all_of(f.begin(), f.end(), [u](Subset s) { return (s & u).size() >= 2; });
}

inline std::vector<Subset> windows_of_size(int n, int size) { return all_subsets_of_size(n, size); }

}  // namespace detail

// Trace inequalities on random saturated families with covering number >= 3.
// Per family: every window of size 5 or 6 that each member meets in at least
// two points (where the trace propositions apply), plus [5] and one random
// 6-window for the Sperner-type inequality. Samples alternate between the
// uniform and the near-cover order.
inline Certificate trace_random_suite(int n, int k, std::size_t samples, std::uint64_t seed) {
  return timed_certificate("TRACE-RANDOM", "trace inequalities hold on random saturated families with tau >= 3",
                           [&](Certificate& c) {
                             std::mt19937_64 rng(seed);
                             TraceBoundCounts counts;
                             std::size_t windows = 0;
                             std::map<std::string, std::size_t> tags;
                             const auto w5 = detail::windows_of_size(n, 5);
                             const auto w6 = detail::windows_of_size(n, 6);
                             for (std::size_t i = 0; i < samples; ++i) {
                               const auto sampler = i % 2 == 0 ? Sampler::Uniform : Sampler::NearCover;
                               const auto [f, t] = random_saturated_family_with_tau(n, k, 3, rng, sampler);
                               std::vector<Subset> us{Subset::interval(1, 5)};
                               std::uniform_int_distribution<std::size_t> pick(0, w6.size() - 1);
                               us.push_back(w6[pick(rng)]);
                               for (const auto* ws : {&w5, &w6})
                                 for (Subset u : *ws)
                                   if (detail::every_member_hits_twice(f, u)) us.push_back(u);
                               for (Subset u : us) {
                                 ++windows;
                                 auto cert = trace_bound_check(f, u, std::nullopt, t, &counts);
                                 for (auto& w : cert.witnesses) {
                                   w["family_index"] = i;
                                   c.fail(w);
                                 }
                               }
                               ++tags[t >= 4 ? "tau>=4" : "tau=3"];
                             }
                             c.params = {{"n", n},
                                         {"k", k},
                                         {"seed", seed},
                                         {"families", samples},
                                         {"windows", windows},
                                         {"checks",
                                          {{"3.1", counts.prop31},
                                           {"3.2", counts.prop32},
                                           {"3.3", counts.prop33},
                                           {"3.4", counts.prop34},
                                           {"3.4-equality", counts.prop34_equality},
                                           {"3.5", counts.sperner},
                                           {"3.6", counts.prop36}}},
                                         {"tau", tags}};
                           });
}

// T(H) is intersecting for saturated intersecting H with n >= 2k.
inline Certificate covers_intersecting_suite(int n, int k, std::size_t samples, std::uint64_t seed) {
  if (n < 2 * k) throw std::invalid_argument("needs n >= 2k");
  return timed_certificate("PROP14-RANDOM", "T(H) is intersecting for saturated intersecting H, n >= 2k",
                           [&](Certificate& c) {
                             std::mt19937_64 rng(seed);
                             std::map<std::string, std::size_t> taus;
                             for (std::size_t i = 0; i < samples; ++i) {
                               const auto h = i % 2 == 0 ? random_saturated_family(n, k, rng)
                                                         : random_saturated_family_near_cover(n, k, rng);
                               if (!is_saturated(h)) c.fail({{"step", "sample not saturated"}, {"index", i}});
                               const auto t = all_covers(h);
                               if (!is_intersecting(t)) {
                                 json fam = json::array();
                                 for (Subset s : h) fam.push_back(s.elements());
                                 c.fail({{"index", i}, {"H", fam}});
                               }
                               ++taus["tau=" + std::to_string(tau(h))];
                             }
                             c.params = {{"n", n}, {"k", k}, {"seed", seed}, {"families", samples}, {"tau", taus}};
                           });
}

// For saturated families with covering number 3 and non-empty 3-covers:
// the 3-covers are a star, K3(4), or contain S or R; in the K3(4) case the
// family is smaller than G(n,k).
inline Certificate classification_suite(int n, int k, std::size_t samples, std::uint64_t seed) {
  if (n <= 2 * k || k < 3) throw std::invalid_argument("needs n > 2k >= 6");
  return timed_certificate(
      "PROP22-RANDOM", "saturated tau = 3 families: T3 is a star, K3(4), or contains S or R", [&](Certificate& c) {
        std::mt19937_64 rng(seed);
        std::map<std::string, std::size_t> tags;
        std::size_t drawn = 0;
        const auto g = g_size_formula(n, k);
        for (std::size_t i = 0; i < samples; ++i) {
          const auto sampler = i % 2 == 0 ? Sampler::Uniform : Sampler::NearCover;
          auto [f, t] = random_saturated_family_with_tau(n, k, 3, rng, sampler);
          ++drawn;
          if (t != 3) {
            ++tags["tau>=4"];
            continue;
          }
          const auto cl = classify_T3(f);
          ++tags[to_string(cl.tag)];
          if (cl.tag == T3Tag::Unclassified) {
            json fam = json::array();
            for (Subset s : f) fam.push_back(s.elements());
            c.fail({{"index", i}, {"F", fam}});
          }
          if (cl.tag == T3Tag::K34 && BigInt(f.size()) >= g)
            c.fail({{"index", i}, {"step", "K3(4) case not below |G(n,k)|"}, {"size", f.size()}});
        }
        c.params = {{"n", n}, {"k", k}, {"seed", seed}, {"families", drawn}, {"tags", tags}};
      });
}

}  // namespace ekrforge

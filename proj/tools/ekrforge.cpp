// Command-line front end: construct, analyze, verify and search.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ekrforge/bounds.hpp"
#include "ekrforge/canonical.hpp"
#include "ekrforge/certificate.hpp"
#include "ekrforge/constructions.hpp"
#include "ekrforge/covers.hpp"
#include "ekrforge/family.hpp"
#include "ekrforge/family_io.hpp"
#include "ekrforge/properties.hpp"
#include "ekrforge/search.hpp"
#include "ekrforge/structure.hpp"

using namespace ekrforge;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "text";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool no_timing = false;
};

unsigned default_threads() {
  if (const char* env = std::getenv("EKRFORGE_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring EKRFORGE_THREADS='" << env << "'\n";
  }
  return 1;
}

// "600s", "10m", "2h", "500ms" or a bare number of seconds.
std::chrono::milliseconds parse_duration(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("bad duration '" + text + "'");
  }
  const std::string unit = text.substr(used);
  double ms = 0;
  if (unit.empty() || unit == "s")
    ms = v * 1000;
  else if (unit == "ms")
    ms = v;
  else if (unit == "m" || unit == "min")
    ms = v * 60000;
  else if (unit == "h")
    ms = v * 3600000;
  else
    throw UsageError("bad duration unit in '" + text + "'");
  if (!(ms > 0)) throw UsageError("budget must be positive");
  return std::chrono::milliseconds(static_cast<long long>(ms));
}

Subset parse_set(const std::string& text) {
  std::vector<int> xs;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      xs.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("bad set '" + text + "', expected e.g. 1,2,3");
    }
  }
  try {
    return Subset::of(xs);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

json members_json(const UniformFamily& f) {
  json arr = json::array();
  for (Subset s : f) arr.push_back(s.elements());
  return arr;
}

// Collects records and prints them in the requested format.
class Emitter {
 public:
  explicit Emitter(const Globals& g) : g_(g) {}

  void certificate(Certificate c) {
    if (g_.no_timing) c.wall_time_ms = 0;
    if (!c.params.contains("seed")) c.params["seed"] = g_.seed;
    if (!c.passed()) failed_ = true;
    json j = c.to_json();
    if (g_.format == "text") {
      std::cout << (c.passed() ? "PASS " : "FAIL ") << c.id << "  " << c.statement << '\n';
      std::cout << "  params: " << j["params"].dump() << '\n';
      for (const auto& w : c.witnesses) std::cout << "  witness: " << w.dump() << '\n';
      if (!g_.no_timing) std::cout << "  wall_time_ms: " << c.wall_time_ms << '\n';
    } else {
      record(std::move(j));
    }
  }

  // Plain result: `text` for humans, `j` for machines (null: text only).
  void result(const std::string& text, json j) {
    if (g_.format == "text")
      std::cout << text;
    else if (!j.is_null())
      record(std::move(j));
  }

  void finish() {
    if (g_.format == "json-array") std::cout << json(array_).dump(2) << '\n';
  }

  bool failed() const { return failed_; }

 private:
  void record(json j) {
    if (g_.format == "json-lines")
      std::cout << j.dump() << '\n';
    else
      array_.push_back(std::move(j));
  }

  const Globals& g_;
  std::vector<json> array_;
  bool failed_ = false;
};

UniformFamily load(const std::string& path) {
  if (path == "-") return read_family(std::cin);
  return read_family(path);
}

void emit_family(Emitter& out, const UniformFamily& f, const std::string& path) {
  if (!path.empty() && path != "-") {
    write_family(f, path);
    out.result("wrote " + std::to_string(f.size()) + " members to " + path + "\n",
               {{"path", path}, {"n", f.n()}, {"k", f.k()}, {"m", f.size()}});
    return;
  }
  out.result(to_text(f), {{"n", f.n()}, {"k", f.k()}, {"m", f.size()}, {"members", members_json(f)}});
}

std::vector<std::string> random_suite_ids() {
  return {"TRACE-RANDOM", "PROP14-RANDOM", "PROP22-RANDOM", "FT92", "HILTON-COR", "HILTON-LEMMA"};
}

struct VerifyArgs {
  std::vector<std::string> suites;
  std::optional<int> k_min, k_max, n_min, n_max;
  std::optional<int> n, k, a, b;
  std::size_t samples = 0;
};

Certificate run_suite(const std::string& id, const VerifyArgs& v, std::uint64_t seed) {
  SweepRange r{v.k_min, v.k_max, v.n_min, v.n_max};
  const auto& ids = identity_suite_ids();
  if (std::find(ids.begin(), ids.end(), id) != ids.end()) return verify_identity_suite(id, r);
  if (id == "TRACE-RANDOM") return trace_random_suite(v.n.value_or(9), v.k.value_or(4), v.samples ? v.samples : 1000, seed);
  if (id == "PROP14-RANDOM")
    return covers_intersecting_suite(v.n.value_or(8), v.k.value_or(3), v.samples ? v.samples : 200, seed);
  if (id == "PROP22-RANDOM") return classification_suite(v.n.value_or(9), v.k.value_or(4), v.samples ? v.samples : 200, seed);
  if (id == "FT92") return ft92_oracle(v.n.value_or(6), v.a.value_or(2), v.b.value_or(3)).certificate;
  if (id == "HILTON-COR") return hilton_corollary_oracle(v.n.value_or(6), v.a.value_or(3), v.b.value_or(2)).certificate;
  if (id == "HILTON-LEMMA") return hilton_lemma_check(v.n.value_or(5), v.a.value_or(2), v.b.value_or(2), v.samples, seed);
  throw UsageError("unknown suite '" + id + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ekrforge: intersecting families with covering number three"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  g.threads = default_threads();
  app.add_option("--format", g.format, "text | json-lines | json-array")
      ->check(CLI::IsMember({"text", "json-lines", "json-array"}));
  app.add_option("--seed", g.seed, "seed for randomized suites (default 0)");
  app.add_option("--threads", g.threads, "worker threads (default $EKRFORGE_THREADS or 1)")->check(CLI::PositiveNumber);
  app.add_flag("--no-timing", g.no_timing, "zero wall_time_ms and drop search node counts so output is byte-stable");

  // construct
  auto* construct = app.add_subcommand("construct", "build a named family");
  std::string kind, out_path, h_path;
  int cn = 0, ck = 0, apex = 1;
  std::uint64_t cm = 0;
  construct->add_option("kind", kind, "g | s | r | k34 | star | hm | lex | fh")->required()->check(
      CLI::IsMember({"g", "s", "r", "k34", "star", "hm", "lex", "fh"}));
  construct->add_option("--n", cn, "ground set size");
  construct->add_option("--k", ck, "uniformity");
  construct->add_option("--m", cm, "number of members (lex)");
  construct->add_option("--apex", apex, "star apex");
  construct->add_option("--from", h_path, "family file H (fh)");
  construct->add_option("--out", out_path, "output file (default stdout)");

  auto* tau_cmd = app.add_subcommand("tau", "covering number of a family file");
  std::string in_path;
  tau_cmd->add_option("file", in_path)->required();

  auto* covers_cmd = app.add_subcommand("covers", "l-element covers of a family file");
  int ell = 0;
  covers_cmd->add_option("file", in_path)->required();
  covers_cmd->add_option("--ell", ell, "cover size (default: all sizes up to k)");

  auto* sat_cmd = app.add_subcommand("saturate", "colex-greedy saturation");
  sat_cmd->add_option("file", in_path)->required();
  sat_cmd->add_option("--out", out_path);

  auto* trace_cmd = app.add_subcommand("trace", "trace F(S,U) and the trace inequalities");
  std::string window;
  trace_cmd->add_option("file", in_path)->required();
  trace_cmd->add_option("--window", window, "U, e.g. 1,2,3,4,5")->required();

  auto* classify_cmd = app.add_subcommand("classify", "shape of the 3-covers");
  classify_cmd->add_option("file", in_path)->required();

  auto* verify_cmd = app.add_subcommand("verify", "run certificate suites");
  VerifyArgs va;
  verify_cmd->add_option("--suite", va.suites, "suite id, repeatable, or 'all'")->required();
  verify_cmd->add_option("--k-min", va.k_min);
  verify_cmd->add_option("--k-max", va.k_max);
  verify_cmd->add_option("--n-min", va.n_min);
  verify_cmd->add_option("--n-max", va.n_max);
  verify_cmd->add_option("--n", va.n, "ground set size for randomized/oracle suites");
  verify_cmd->add_option("--k", va.k);
  verify_cmd->add_option("--a", va.a);
  verify_cmd->add_option("--b", va.b);
  verify_cmd->add_option("--samples", va.samples, "sample count (0 = suite default; exhaustive for HILTON-LEMMA)");

  auto* oracle_cmd = app.add_subcommand("oracle", "exact m(n,k,r) by branch and bound");
  int on = 0, ok = 0, orr = 3;
  std::optional<int> oell;
  std::string budget = "600s";
  bool warm = false, enumerate = false;
  oracle_cmd->add_option("--n", on)->required();
  oracle_cmd->add_option("--k", ok)->required();
  oracle_cmd->add_option("--r", orr, "minimum covering number 1..3")->check(CLI::Range(1, 3));
  oracle_cmd->add_option("--ell", oell, "degree-capped variant with parameter l");
  oracle_cmd->add_option("--budget", budget, "time budget, e.g. 600s, 10m, 2h");
  oracle_cmd->add_flag("--warm-start", warm, "start from G(n,k) as incumbent (r = 3)");
  oracle_cmd->add_flag("--enumerate", enumerate, "also list optima up to isomorphism");

  auto* lex_cmd = app.add_subcommand("lex", "lexicographic family L(n,k,m)");
  lex_cmd->add_option("--n", cn)->required();
  lex_cmd->add_option("--k", ck)->required();
  lex_cmd->add_option("--m", cm)->required();
  lex_cmd->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Emitter out(g);
  try {
    if (*construct) {
      UniformFamily f(1, 0);
      if (kind == "s") f = build_S(cn ? cn : 6);
      else if (kind == "r") f = build_R(cn ? cn : 5);
      else if (kind == "k34") f = build_K34(cn ? cn : 4);
      else if (kind == "g") f = build_G(cn, ck);
      else if (kind == "star") f = full_star(cn, ck, apex);
      else if (kind == "lex") f = lex_family(cn, ck, cm);
      else if (kind == "hm") {
        if (ck < 2 || cn <= 2 * ck) throw UsageError("hm needs n > 2k >= 4");
        const Subset top = Subset::interval(2, ck + 1);
        std::vector<Subset> m{top};
        for_each_subset_of_size(cn, ck, [&](Subset s) {
          if (s.contains(1) && s.meets(top)) m.push_back(s);
        });
        f = UniformFamily(cn, ck, m);
      } else {
        if (h_path.empty()) throw UsageError("fh needs --from FILE");
        f = build_F_H(load(h_path));
      }
      emit_family(out, f, out_path);
    } else if (*tau_cmd) {
      const auto f = load(in_path);
      const int t = tau(f);
      out.result(std::to_string(t) + "\n", {{"tau", t}, {"n", f.n()}, {"k", f.k()}, {"m", f.size()}});
    } else if (*covers_cmd) {
      const auto f = load(in_path);
      std::vector<Subset> cs = ell ? covers(f, ell).members : all_covers(f);
      std::string text;
      json arr = json::array();
      for (Subset s : cs) {
        text += s.to_string() + "\n";
        arr.push_back(s.elements());
      }
      out.result(text, {{"ell", ell ? json(ell) : json("1..k")}, {"count", cs.size()}, {"covers", arr},
                        {"intersecting", is_intersecting(cs)}});
    } else if (*sat_cmd) {
      emit_family(out, saturate(load(in_path)), out_path);
    } else if (*trace_cmd) {
      const auto f = load(in_path);
      const Subset u = parse_set(window);
      const auto tr = trace(f, u);
      std::string text;
      json rows = json::array();
      for (const auto& [s, e] : tr.table()) {
        const auto a = tr.alpha(s);
        text += "f" + s.to_string() + " = " + std::to_string(e.count) +
                (a ? "  alpha = " + ekrforge::to_string(*a) : "") + "\n";
        rows.push_back({{"S", s.elements()}, {"f", e.count}, {"alpha", a ? json(ekrforge::to_string(*a)) : json()}});
      }
      out.result(text, {{"U", u.elements()}, {"trace", rows}});
      out.certificate(trace_bound_check(f, u));
    } else if (*classify_cmd) {
      const auto f = load(in_path);
      const auto c = classify_T3(f);
      json j{{"tag", to_string(c.tag)}, {"t3", json::array()}};
      for (Subset s : c.t3) j["t3"].push_back(s.elements());
      std::string text = std::string(to_string(c.tag));
      if (c.tag == T3Tag::Star) {
        j["apex"] = c.apex;
        text += " apex " + std::to_string(c.apex);
      }
      if (c.tag == T3Tag::K34) {
        j["host"] = c.host.elements();
        text += " on " + c.host.to_string();
      }
      if (c.copy) {
        json tr = json::array();
        for (Subset s : c.copy->triples) {
          tr.push_back(s.elements());
          text += " " + s.to_string();
        }
        j["copy"] = tr;
      }
      j["warnings"] = c.warnings;
      for (const auto& w : c.warnings) text += "\n  warning: " + w;
      out.result(text + "\n", j);
    } else if (*verify_cmd) {
      std::vector<std::string> ids;
      for (const auto& s : va.suites) {
        if (s == "all") {
          for (const auto& id : identity_suite_ids()) ids.push_back(id);
          for (const auto& id : random_suite_ids()) ids.push_back(id);
        } else {
          ids.push_back(s);
        }
      }
      std::vector<Certificate> certs(ids.size());
      std::vector<std::string> errors(ids.size());
      std::atomic<std::size_t> next{0};
      auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < ids.size();) {
          try {
            certs[i] = run_suite(ids[i], va, g.seed);
          } catch (const std::exception& e) {
            errors[i] = e.what();
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned t = 1; t < std::min<std::size_t>(g.threads, ids.size()); ++t) pool.emplace_back(work);
      work();
      for (auto& t : pool) t.join();
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (!errors[i].empty()) throw UsageError(ids[i] + ": " + errors[i]);
      for (auto& c : certs) out.certificate(std::move(c));
    } else if (*oracle_cmd) {
      SearchOptions opt;
      opt.budget.time = parse_duration(budget);
      opt.threads = g.threads;
      if (warm) {
        if (orr != 3 || oell) throw UsageError("--warm-start applies to r = 3 without --ell");
        opt.incumbent = build_G(on, ok);
      }
      const auto res = oell ? max_intersecting_degcap(on, ok, *oell, opt) : max_intersecting(on, ok, orr, opt);
      auto cert = search_certificate(res);
      if (g.no_timing) cert.params.erase("nodes");
      out.result("value " + std::to_string(res.value) + ", status " + to_string(res.status) + "\n", json());
      if (enumerate) {
        if (res.status != SearchStatus::ProvedOptimal) throw UsageError("--enumerate needs a proved optimum");
        const auto opts = enumerate_optima(on, ok, orr, res.value, opt);
        json forms = json::array();
        std::string text;
        for (const auto& f : opts.forms) {
          forms.push_back(f.to_string());
          text += "  " + f.to_string() + "\n";
        }
        cert.params["optima_up_to_isomorphism"] = opts.forms.size();
        cert.params["optima_complete"] = opts.complete;
        cert.params["optima"] = forms;
        if (orr == 3 && ok >= 3 && !opts.forms.empty())
          cert.params["optima_include_G"] =
              std::find(opts.forms.begin(), opts.forms.end(), canonical_form(build_G(on, ok))) != opts.forms.end();
        out.result(std::to_string(opts.forms.size()) + " optima up to isomorphism" +
                       (opts.complete ? "" : " (partial)") + "\n" + text,
                   json());
      }
      out.certificate(std::move(cert));
    } else if (*lex_cmd) {
      emit_family(out, lex_family(cn, ck, cm), out_path);
    }
  } catch (const std::exception& e) {
    // bad arguments, malformed family files and refused sizes alike
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  out.finish();
  return out.failed() ? 1 : 0;
}

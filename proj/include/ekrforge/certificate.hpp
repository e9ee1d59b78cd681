#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ekrforge {

using json = nlohmann::ordered_json;

// Verdict for one named identity or inequality over a parameter range.
// The verdict is derived from the witness list: pass iff it is empty.
struct Certificate {
  std::string id;
  std::string statement;
  json params = json::object();
  std::vector<json> witnesses;
  std::int64_t wall_time_ms = 0;
  std::size_t failures = 0;

  static constexpr std::size_t kMaxWitnesses = 64;

  bool passed() const { return failures == 0; }

  void fail(json witness) {
    ++failures;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
  }

  json to_json() const {
    json j = json::object();
    j["id"] = id;
    j["statement"] = statement;
    json p = params;
    if (failures > witnesses.size()) p["witnesses_truncated_from"] = failures;
    j["params"] = p;
    j["verdict"] = passed() ? "pass" : "fail";
    j["witnesses"] = witnesses;
    j["wall_time_ms"] = wall_time_ms;
    return j;
  }
};

// Runs body(cert) and stamps the elapsed wall time.
template <typename Body>
Certificate timed_certificate(std::string id, std::string statement, Body&& body) {
  Certificate c;
  c.id = std::move(id);
  c.statement = std::move(statement);
  const auto t0 = std::chrono::steady_clock::now();
  body(c);
  c.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

}  // namespace ekrforge

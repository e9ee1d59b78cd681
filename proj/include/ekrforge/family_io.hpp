#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ekrforge/family.hpp"

namespace ekrforge {

// Parse failure in a family file; line() is 1-based, 0 when not tied to a line.
class FamilyFormatError : public std::runtime_error {
 public:
  FamilyFormatError(std::size_t line, const std::string& reason, const std::string& source = "")
      : std::runtime_error(format(line, reason, source)), line_(line), reason_(reason) {}
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  static std::string format(std::size_t line, const std::string& reason, const std::string& source) {
    std::string s = source.empty() ? "" : source + ":";
    if (line) s += std::to_string(line) + ":";
    return s.empty() ? reason : s + " " + reason;
  }
  std::size_t line_;
  std::string reason_;
};

namespace detail {

inline std::vector<long long> parse_ints(const std::string& text, std::size_t line_no) {
  std::istringstream in(text);
  std::vector<long long> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw FamilyFormatError(line_no, "not an integer: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

// Text format: header "n k m", then m lines of sorted 1-based elements.
// Member lines may come in any order; they are stored in colex order.
inline UniformFamily read_family(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw FamilyFormatError(0, "empty input, expected header 'n k m'");
  ++line_no;
  const auto head = detail::parse_ints(line, line_no);
  if (head.size() != 3) throw FamilyFormatError(line_no, "header must be 'n k m'");
  const long long n = head[0], k = head[1], m = head[2];
  if (n < 1 || n > kMaxGround) throw FamilyFormatError(line_no, "n must be in [1,64]");
  if (k < 0 || k > n) throw FamilyFormatError(line_no, "k must be in [0,n]");
  if (m < 0) throw FamilyFormatError(line_no, "m must be non-negative");

  std::vector<Subset> members;
  std::vector<std::size_t> origin;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (static_cast<long long>(members.size()) < m) throw FamilyFormatError(line_no, "blank line");
      continue;
    }
    if (static_cast<long long>(members.size()) == m)
      throw FamilyFormatError(line_no, "more member lines than the header's m = " + std::to_string(m));
    const auto xs = detail::parse_ints(line, line_no);
    if (static_cast<long long>(xs.size()) != k)
      throw FamilyFormatError(line_no, "expected " + std::to_string(k) + " elements, got " + std::to_string(xs.size()));
    Mask bits = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] < 1 || xs[i] > n) throw FamilyFormatError(line_no, "element " + std::to_string(xs[i]) + " outside [1,n]");
      if (i > 0 && xs[i] <= xs[i - 1]) throw FamilyFormatError(line_no, "elements must be strictly increasing");
      bits |= Mask{1} << (xs[i] - 1);
    }
    const Subset s(bits);
    for (std::size_t j = 0; j < members.size(); ++j)
      if (members[j] == s)
        throw FamilyFormatError(line_no, "duplicate member " + s.to_string() + " (first on line " +
                                             std::to_string(origin[j]) + ")");
    members.push_back(s);
    origin.push_back(line_no);
  }
  if (static_cast<long long>(members.size()) != m)
    throw FamilyFormatError(line_no, "header declares " + std::to_string(m) + " members, found " +
                                         std::to_string(members.size()));
  return UniformFamily(static_cast<int>(n), static_cast<int>(k), std::move(members));
}

inline UniformFamily read_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return read_family(in);
  } catch (const FamilyFormatError& e) {
    throw FamilyFormatError(e.line(), e.reason(), path);
  }
}

inline void write_family(const UniformFamily& f, std::ostream& out) {
  out << f.n() << ' ' << f.k() << ' ' << f.size() << '\n';
  for (Subset s : f) {
    bool first = true;
    for (int x : s.elements()) {
      if (!first) out << ' ';
      out << x;
      first = false;
    }
    out << '\n';
  }
}

inline void write_family(const UniformFamily& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_family(f, out);
}

inline std::string to_text(const UniformFamily& f) {
  std::ostringstream s;
  write_family(f, s);
  return s.str();
}

}  // namespace ekrforge

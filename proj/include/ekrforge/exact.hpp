#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ekrforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Binomial coefficient with the convention binom(a, b) = 0 for b < 0 or b > a.
// A negative top is rejected: in every verified range it signals a bug.
inline BigInt binom(long long a, long long b) {
  if (a < 0) {
    throw std::domain_error("binom: negative top argument " + std::to_string(a));
  }
  if (b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  BigInt r = 1;
  for (long long i = 1; i <= b; ++i) {
    r *= a - b + i;
    r /= i;
  }
  return r;
}

// Machine-word binomial for enumeration sizes; throws on overflow.
inline std::uint64_t binom_u64(int a, int b) {
  if (a < 0) throw std::domain_error("binom_u64: negative top argument");
  if (b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  unsigned __int128 r = 1;
  for (int i = 1; i <= b; ++i) {
    r = r * static_cast<unsigned>(a - b + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) throw std::overflow_error("binom_u64: overflow");
  }
  return static_cast<std::uint64_t>(r);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
  auto num = boost::multiprecision::numerator(v);
  auto den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace ekrforge

#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"
#include "util.hpp"

namespace jordankit {

/// Exact nonnegative rational, always stored reduced. Survey ratios like
/// oracle_index / sylow_order^3 are recorded this way so that emitted files
/// are bit-stable and comparisons are exact.
struct Rational {
  uint64_t num = 0;
  uint64_t den = 1;

  Rational() = default;
  Rational(uint64_t n, uint64_t d) : num(n), den(d) {
    if (den == 0) throw Error("Rational: zero denominator");
    uint64_t g = gcd_u64(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoull(s), 1);
    return Rational(std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1)));
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<unsigned __int128>(a.num) * b.den <
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
};

}  // namespace jordankit

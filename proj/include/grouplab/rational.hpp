#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "grouplab/errors.hpp"

namespace grouplab {

/// Exact rational with i64 components. The amenability and sofic modules do
/// all their certificate comparisons through this type; comparisons
/// cross-multiply in 128 bits so desk-scale values never overflow.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) raise(ErrorKind::invalid_parameter, "rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  /// Parses "p", "p/q". Throws on malformed input.
  static Rational parse(const std::string& text);
};

inline Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    raise(ErrorKind::parse_error, "bad rational literal: " + text);
  }
}

}  // namespace grouplab

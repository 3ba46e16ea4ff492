#pragma once

// Exact counting primitives and log-space reals.
//
// Everything that feeds an exact oracle goes through BigCount / Rational; closed
// form bounds that overflow doubles at m >= 50 are carried as LogReal.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace cideal {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A non-negative real stored as its natural logarithm.
class LogReal {
 public:
  constexpr LogReal() = default;

  static LogReal zero() { return LogReal{}; }
  static LogReal from_log(double log_value);
  /// Requires value >= 0.
  static LogReal from_value(double value);
  static LogReal from_count(const BigCount& value);
  static LogReal from_rational(const Rational& value);

  [[nodiscard]] bool is_zero() const { return zero_; }
  /// ln of the value; -inf for zero.
  [[nodiscard]] double log() const;
  [[nodiscard]] double log2() const;
  /// exp(log()); +inf when it does not fit a double.
  [[nodiscard]] double value() const;
  [[nodiscard]] bool overflows() const;

  friend LogReal operator*(const LogReal& a, const LogReal& b);
  friend LogReal operator/(const LogReal& a, const LogReal& b);
  friend std::partial_ordering operator<=>(const LogReal& a, const LogReal& b);
  friend bool operator==(const LogReal& a, const LogReal& b);

 private:
  double log_ = 0.0;
  bool zero_ = true;
};

/// Bracket lower <= ln k! <= upper from Robbins' refinement of Stirling's formula.
struct StirlingBracket {
  LogReal lower;
  LogReal upper;
};

/// Exact binomial coefficient C(a, b); zero when b > a.
BigCount binom(std::uint64_t a, std::uint64_t b);

/// Binomial with an arbitrary-precision top argument (universes beyond 2^64).
BigCount binom(const BigCount& a, std::uint64_t b);

BigCount factorial(std::uint64_t k);

/// Exact multinomial coefficient n! / (l_1! ... l_m!), n = sum of parts.
template <typename Range>
BigCount multinomial(const Range& parts) {
  BigCount result = 1;
  std::uint64_t running = 0;
  for (auto part : parts) {
    running += static_cast<std::uint64_t>(part);
    result *= binom(running, static_cast<std::uint64_t>(part));
  }
  return result;
}

BigCount power(const BigCount& base, std::uint64_t exponent);
Rational power(const Rational& base, std::uint64_t exponent);

/// Natural logarithm of an arbitrarily large positive integer.
double log_big(const BigCount& value);

/// ln Gamma(k + 1) as a double, for closed forms.
double log_factorial(double k);

/// Throws DomainError for k = 0 (ln 0! = 0 needs no bracket).
StirlingBracket stirling_bracket(std::uint64_t k);

/// Number of (l_1..l_m) with 0 <= l_i <= cap and sum n.
BigCount composition_count(std::uint64_t n, std::uint64_t m, std::uint64_t cap);

/// floor(r) for r >= 0.
BigCount floor_of(const Rational& r);
BigCount ceil_of(const Rational& r);

/// "numerator/denominator" (reduced), or just the integer when denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const BigCount& v);

/// Parses "3", "3/2", "1.5" or "-0.25" into an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace cideal

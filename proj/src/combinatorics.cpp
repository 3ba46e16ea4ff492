#include "cideal/combinatorics.hpp"

#include "cideal/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cideal {

namespace bmp = boost::multiprecision;

LogReal LogReal::from_log(double log_value) {
  if (std::isnan(log_value)) {
    throw DomainError("LogReal: NaN logarithm");
  }
  LogReal r;
  if (log_value == -std::numeric_limits<double>::infinity()) {
    return r;
  }
  r.log_ = log_value;
  r.zero_ = false;
  return r;
}

LogReal LogReal::from_value(double value) {
  if (!(value >= 0.0)) {
    throw DomainError("LogReal: negative or NaN value");
  }
  if (value == 0.0) {
    return zero();
  }
  return from_log(std::log(value));
}

LogReal LogReal::from_count(const BigCount& value) {
  if (value < 0) {
    throw DomainError("LogReal: negative count");
  }
  if (value == 0) {
    return zero();
  }
  return from_log(log_big(value));
}

LogReal LogReal::from_rational(const Rational& value) {
  if (value < 0) {
    throw DomainError("LogReal: negative rational");
  }
  if (value == 0) {
    return zero();
  }
  return from_log(log_big(bmp::numerator(value)) - log_big(bmp::denominator(value)));
}

double LogReal::log() const {
  return zero_ ? -std::numeric_limits<double>::infinity() : log_;
}

double LogReal::log2() const { return log() / std::numbers::ln2; }

double LogReal::value() const { return zero_ ? 0.0 : std::exp(log_); }

bool LogReal::overflows() const { return !zero_ && std::isinf(std::exp(log_)); }

LogReal operator*(const LogReal& a, const LogReal& b) {
  if (a.zero_ || b.zero_) {
    return LogReal::zero();
  }
  return LogReal::from_log(a.log_ + b.log_);
}

LogReal operator/(const LogReal& a, const LogReal& b) {
  if (b.zero_) {
    throw DomainError("LogReal: division by zero");
  }
  if (a.zero_) {
    return LogReal::zero();
  }
  return LogReal::from_log(a.log_ - b.log_);
}

std::partial_ordering operator<=>(const LogReal& a, const LogReal& b) {
  if (a.zero_ || b.zero_) {
    return (!a.zero_) <=> (!b.zero_);
  }
  return a.log_ <=> b.log_;
}

bool operator==(const LogReal& a, const LogReal& b) {
  return a.zero_ == b.zero_ && (a.zero_ || a.log_ == b.log_);
}

BigCount binom(std::uint64_t a, std::uint64_t b) {
  if (b > a) {
    return 0;
  }
  const std::uint64_t k = std::min(b, a - b);
  BigCount result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (a - k + i) is divisible by i after the multiplication.
    result *= (a - k + i);
    result /= i;
  }
  return result;
}

BigCount binom(const BigCount& a, std::uint64_t b) {
  if (a < 0) {
    throw DomainError("binom: negative top argument");
  }
  if (a <= std::numeric_limits<std::uint64_t>::max()) {
    return binom(a.convert_to<std::uint64_t>(), b);
  }
  BigCount result = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    result *= (a - b + i);
    result /= i;
  }
  return result;
}

BigCount factorial(std::uint64_t k) {
  BigCount result = 1;
  for (std::uint64_t i = 2; i <= k; ++i) {
    result *= i;
  }
  return result;
}

BigCount power(const BigCount& base, std::uint64_t exponent) {
  BigCount result = 1;
  BigCount b = base;
  while (exponent != 0) {
    if (exponent & 1U) {
      result *= b;
    }
    exponent >>= 1U;
    if (exponent != 0) {
      b *= b;
    }
  }
  return result;
}

Rational power(const Rational& base, std::uint64_t exponent) {
  return Rational(power(bmp::numerator(base), exponent), power(bmp::denominator(base), exponent));
}

double log_big(const BigCount& value) {
  if (value <= 0) {
    throw DomainError("log_big: non-positive argument");
  }
  const auto top = bmp::msb(value);
  if (top < 1000) {
    return std::log(value.convert_to<double>());
  }
  const auto shift = top - 62;
  const BigCount head = value >> shift;
  return std::log(head.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

double log_factorial(double k) { return std::lgamma(k + 1.0); }

StirlingBracket stirling_bracket(std::uint64_t k) {
  if (k == 0) {
    throw DomainError("stirling_bracket: k must be >= 1");
  }
  const double kd = static_cast<double>(k);
  const double base = 0.5 * std::log(2.0 * std::numbers::pi * kd) + kd * std::log(kd) - kd;
  return StirlingBracket{
      LogReal::from_log(base + 1.0 / (12.0 * kd + 1.0)),
      LogReal::from_log(base + 1.0 / (12.0 * kd)),
  };
}

BigCount composition_count(std::uint64_t n, std::uint64_t m, std::uint64_t cap) {
  if (m == 0) {
    return n == 0 ? 1 : 0;
  }
  if (n > m * cap) {
    return 0;
  }
  // ways[s] = number of compositions of s into the cells processed so far.
  std::vector<BigCount> ways(n + 1, BigCount(0));
  ways[0] = 1;
  std::vector<BigCount> prefix(n + 2);
  for (std::uint64_t cell = 0; cell < m; ++cell) {
    prefix[0] = 0;
    for (std::uint64_t s = 0; s <= n; ++s) {
      prefix[s + 1] = prefix[s] + ways[s];
    }
    for (std::uint64_t s = 0; s <= n; ++s) {
      const std::uint64_t low = s > cap ? s - cap : 0;
      ways[s] = prefix[s + 1] - prefix[low];
    }
  }
  return ways[n];
}

BigCount floor_of(const Rational& r) {
  if (r < 0) {
    throw DomainError("floor_of: negative argument");
  }
  return bmp::numerator(r) / bmp::denominator(r);
}

BigCount ceil_of(const Rational& r) {
  BigCount f = floor_of(r);
  if (Rational(f) != r) {
    ++f;
  }
  return f;
}

std::string to_string(const BigCount& v) { return v.str(); }

std::string to_string(const Rational& r) {
  if (bmp::denominator(r) == 1) {
    return bmp::numerator(r).str();
  }
  return bmp::numerator(r).str() + "/" + bmp::denominator(r).str();
}

namespace {

BigCount parse_digits(const std::string& text, const std::string& original) {
  if (text.empty() || !std::all_of(text.begin(), text.end(),
                                    [](unsigned char ch) { return std::isdigit(ch) != 0; })) {
    throw std::invalid_argument("not a rational literal: '" + original + "'");
  }
  return BigCount(text);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.erase(body.begin());
  }
  Rational value;
  if (const auto slash = body.find('/'); slash != std::string::npos) {
    const BigCount den = parse_digits(body.substr(slash + 1), text);
    if (den == 0) {
      throw std::invalid_argument("zero denominator in '" + text + "'");
    }
    value = Rational(parse_digits(body.substr(0, slash), text), den);
  } else if (const auto dot = body.find('.'); dot != std::string::npos) {
    const std::string whole = body.substr(0, dot);
    const std::string frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) {
      throw std::invalid_argument("not a rational literal: '" + text + "'");
    }
    const BigCount w = whole.empty() ? BigCount(0) : parse_digits(whole, text);
    const BigCount f = frac.empty() ? BigCount(0) : parse_digits(frac, text);
    value = Rational(w) + Rational(f, power(BigCount(10), frac.size()));
  } else {
    value = Rational(parse_digits(body, text));
  }
  return negative ? Rational(-value) : value;
}

}  // namespace cideal

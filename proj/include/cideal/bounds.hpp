#pragma once

// Closed-form bounds on the minimal c-ideal family size H_c and the derived
// advice-bit counts.
//
// Entry names form a stable vocabulary shared by JSON and CSV output:
//   lower.volume lower.main lower.universe lower.fk lower.mehlhorn
//   lower.mehlhorn.exact upper.prob.tight upper.prob.loose upper.main
//   upper.naor upper.yao upper.fk
// Entries marked `asymptotic` are order-of-growth statements or limits and are
// not guaranteed at any particular finite size.

#include "cideal/combinatorics.hpp"
#include "cideal/hashspace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cideal {

enum class BoundKind { lower, upper };

struct BoundEntry {
  std::string name;
  BoundKind kind = BoundKind::lower;
  LogReal value;
  /// Integer form of the bound (ceiling of a lower bound, or the integer an
  /// upper bound rounds to) when it is cheap to state exactly.
  std::optional<BigCount> integer;
  bool valid = false;
  bool asymptotic = false;
  std::string validity_note;
  Rational epsilon;
};

/// Parameters for the bound evaluators. Unlike Params the universe may be
/// arbitrarily large (u = 2^256 is fine); exact counting is used only when cheap.
struct BoundParams {
  BigCount u;
  std::uint64_t m = 1;
  std::uint64_t n = 1;
  Rational c{1};
  Rational eps{0};
  Rational t{2};

  /// Requires 1 <= m <= n <= u, c >= 1, 0 <= eps < 1, t > 1.
  static BoundParams make(BigCount u, std::uint64_t m, std::uint64_t n, Rational c,
                          Rational eps = 0, Rational t = 2);
  static BoundParams from(const Params& p, Rational eps = 0, Rational t = 2);

  [[nodiscard]] Rational alpha() const { return Rational(n, m); }
  [[nodiscard]] Rational threshold() const { return c * alpha(); }
  [[nodiscard]] double ln_u() const;
};

struct BoundReport {
  BoundParams params;
  std::optional<BigCount> sets;  // C(u, n) when computed exactly
  double ln_sets = 0.0;
  std::optional<BigCount> m_c;   // M_c for the balanced decomposition
  std::vector<BoundEntry> entries;

  /// Throws std::out_of_range for unknown names.
  [[nodiscard]] const BoundEntry& at(const std::string& name) const;
  [[nodiscard]] const BoundEntry* find(const std::string& name) const;
};

struct AdviceReport {
  /// ln(ln u - ln c alpha) - ln ln m, evaluated in nats as printed.
  std::optional<double> lower_easy;
  /// log2 of lower.universe, the same statement measured in bits.
  std::optional<double> lower_easy_bits;
  std::optional<double> lower_main;
  std::optional<double> upper_main;
  std::optional<double> upper_yao;
  /// ln of the per-cell factor of upper.main; > 1.002 at c = alpha = 1.
  double upper_main_rate = 0.0;
  std::vector<std::string> notes;
};

struct ProbabilityUpper {
  Rational p;
  BigCount tight;  // 1 + floor(-ln|S_n| / ln(1 - p))
  LogReal loose_value;
  BigCount loose;  // ceil(|S_n| / M_c * n ln u)
};

/// (1 - eps) exp(m e^-alpha (1 - eps) (alpha / (c alpha + 1))^(c alpha + 1)).
LogReal lower_main(std::uint64_t m, const Rational& alpha, const Rational& c, const Rational& eps);

/// (ln u - ln c alpha) / ln m; empty when m < 2, u <= c alpha or c alpha >= n
/// (no key set can then overload a cell, so one function suffices).
std::optional<double> lower_universe(const BigCount& u, std::uint64_t m, std::uint64_t n,
                                     const Rational& c);

/// (sqrt(2 pi c alpha)^(1/c) c^alpha e^(1/(12 c^2 alpha)) / (alpha + 1)^(1 - 1/c))^m
/// * sqrt(n / (2 pi)) * ln u, before the ceiling.
LogReal upper_main(const BigCount& u, std::uint64_t n, std::uint64_t m, const Rational& c);

/// ln of the base raised to m in upper_main.
double upper_main_rate(const Rational& c, const Rational& alpha);

/// sqrt(2 pi alpha)^m e^(m/(12 alpha)) sqrt(n) ln u / sqrt(2 pi); the hidden
/// constant is fixed so that the form is comparable with upper_main.
LogReal naor_upper(const BigCount& u, std::uint64_t n, std::uint64_t m);

/// floor(ln C(u, n) / ln t) + 1, i.e. the least r with C(u, n) < t^r.
/// Exact when C(u, n) is small enough to compute.
BigCount upper_yao(const BigCount& u, std::uint64_t n, const Rational& t);

/// Throws DomainError when m_c = 0 or m_c > C(u, n).
ProbabilityUpper probability_upper(const BigCount& u, std::uint64_t n, const BigCount& m_c);

/// Fredman-Komlos pair and Mehlhorn's estimates, with validity flags.
std::vector<BoundEntry> comparison_bounds(const BoundParams& p);

/// Every named bound for p. M_c is computed exactly when u < 2^32 and n is modest.
BoundReport bound_report(const BoundParams& p);

AdviceReport advice_report(const BoundReport& report);

/// ln C(u, n); exact through BigCount when cheap, otherwise summed in floating point.
double ln_binom(const BigCount& u, std::uint64_t n);

}  // namespace cideal

#include "cideal/bounds.hpp"

#include "cideal/distributions.hpp"
#include "cideal/errors.hpp"
#include "cideal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cideal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// E[max load] of n throws into m cells in long double. P(max <= k) is
// n!/m^n times the coefficient of x^n in (sum_{l<=k} x^l/l!)^m.
long double expected_tmax_float(std::uint64_t n, std::uint64_t m) {
  const long double scale = std::lgamma(static_cast<long double>(n) + 1) -
                            static_cast<long double>(n) * std::log(static_cast<long double>(m));
  std::vector<long double> inv_fact(n + 1);
  inv_fact[0] = 1;
  for (std::uint64_t l = 1; l <= n; ++l) {
    inv_fact[l] = inv_fact[l - 1] / static_cast<long double>(l);
  }
  long double expectation = 0;
  std::vector<long double> poly(n + 1);
  std::vector<long double> next(n + 1);
  for (std::uint64_t k = (n + m - 1) / m; k < n; ++k) {
    std::fill(poly.begin(), poly.end(), 0.0L);
    poly[0] = 1;
    for (std::uint64_t cell = 0; cell < m; ++cell) {
      for (std::uint64_t s = 0; s <= n; ++s) {
        long double acc = 0;
        for (std::uint64_t l = 0; l <= std::min(k, s); ++l) {
          acc += inv_fact[l] * poly[s - l];
        }
        next[s] = acc;
      }
      poly.swap(next);
    }
    const long double tail = 1 - std::exp(std::log(poly[n]) + scale);
    expectation += tail;
    if (tail < 1e-18L) {
      break;
    }
  }
  return expectation + static_cast<long double>((n + m - 1) / m);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::uint64_t bit_length(const BigCount& v) {
  return v == 0 ? 0 : static_cast<std::uint64_t>(boost::multiprecision::msb(v)) + 1;
}

// C(u, n) exactly only when the result stays around a megabit.
bool exact_sets_feasible(const BigCount& u, std::uint64_t n) {
  return n <= 20'000 && n * bit_length(u) <= (1u << 20);
}

// Exact rational powers are only attempted for moderate exponents.
constexpr std::uint64_t kExactPowerLimit = 100'000;

std::optional<BigCount> integer_ceiling(double value) {
  if (!std::isfinite(value) || value > 1e15) {
    return std::nullopt;
  }
  return BigCount(static_cast<std::uint64_t>(std::ceil(value)));
}

BoundEntry entry(std::string name, BoundKind kind, LogReal value, bool valid,
                 std::string note = {}) {
  BoundEntry e;
  e.name = std::move(name);
  e.kind = kind;
  e.value = value;
  e.valid = valid;
  e.validity_note = std::move(note);
  return e;
}

std::optional<BigCount> balanced_m_c(const BoundParams& p, std::uint64_t cap) {
  if (p.u > std::numeric_limits<std::uint32_t>::max()) {
    return std::nullopt;
  }
  const std::uint64_t work = p.m * p.n * std::min<std::uint64_t>(cap, p.n);
  if (work > 2'000'000) {
    return std::nullopt;
  }
  return count_ideal_sets(Decomposition::balanced(p.u.convert_to<std::uint64_t>(), p.m), p.n,
                          cap);
}

}  // namespace

BoundParams BoundParams::make(BigCount u, std::uint64_t m, std::uint64_t n, Rational c,
                              Rational eps, Rational t) {
  if (m < 1 || m > n || BigCount(n) > u) {
    throw DomainError("bounds: requires 1 <= m <= n <= u");
  }
  if (c < 1) {
    throw DomainError("bounds: requires c >= 1");
  }
  if (eps < 0 || eps >= 1) {
    throw DomainError("bounds: requires 0 <= eps < 1");
  }
  if (t <= 1) {
    throw DomainError("bounds: requires t > 1");
  }
  BoundParams p;
  p.u = std::move(u);
  p.m = m;
  p.n = n;
  p.c = std::move(c);
  p.eps = std::move(eps);
  p.t = std::move(t);
  return p;
}

BoundParams BoundParams::from(const Params& p, Rational eps, Rational t) {
  return make(BigCount(p.u()), p.m(), p.n(), p.c(), std::move(eps), std::move(t));
}

double BoundParams::ln_u() const { return log_big(u); }

const BoundEntry& BoundReport::at(const std::string& name) const {
  if (const auto* e = find(name)) {
    return *e;
  }
  throw std::out_of_range("no bound named " + name);
}

const BoundEntry* BoundReport::find(const std::string& name) const {
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const BoundEntry& e) { return e.name == name; });
  return it == entries.end() ? nullptr : &*it;
}

double ln_binom(const BigCount& u, std::uint64_t n) {
  if (BigCount(n) > u) {
    return -std::numeric_limits<double>::infinity();
  }
  if (exact_sets_feasible(u, n)) {
    return log_big(binom(u, n));
  }
  // n ln u + sum ln(1 - k/u) - ln n!
  const double ln_u = log_big(u);
  double sum = static_cast<double>(n) * ln_u - log_factorial(static_cast<double>(n));
  for (std::uint64_t k = 1; k < n; ++k) {
    sum += std::log1p(-std::exp(std::log(static_cast<double>(k)) - ln_u));
  }
  return sum;
}

LogReal lower_main(std::uint64_t m, const Rational& alpha, const Rational& c, const Rational& eps) {
  const double a = to_double(alpha);
  const double k = to_double(c * alpha + 1);
  const double e = to_double(eps);
  const double exponent =
      static_cast<double>(m) * std::exp(-a) * (1.0 - e) * std::exp(k * std::log(a / k));
  return LogReal::from_log(std::log1p(-e) + exponent);
}

std::optional<double> lower_universe(const BigCount& u, std::uint64_t m, std::uint64_t n,
                                     const Rational& c) {
  const Rational threshold = c * Rational(n, m);
  // Needs a set that can overload a cell: c alpha < n, i.e. c < m.
  if (m < 2 || Rational(u) <= threshold || threshold >= Rational(n)) {
    return std::nullopt;
  }
  return (log_big(u) - std::log(to_double(threshold))) / std::log(static_cast<double>(m));
}

double upper_main_rate(const Rational& c, const Rational& alpha) {
  const double cd = to_double(c);
  const double a = to_double(alpha);
  return std::log(kTwoPi * cd * a) / (2.0 * cd) + a * std::log(cd) + 1.0 / (12.0 * cd * cd * a) -
         (1.0 - 1.0 / cd) * std::log(a + 1.0);
}

LogReal upper_main(const BigCount& u, std::uint64_t n, std::uint64_t m, const Rational& c) {
  const double ln_u = log_big(u);
  if (ln_u <= 0.0) {
    return LogReal::zero();
  }
  const Rational alpha(n, m);
  return LogReal::from_log(static_cast<double>(m) * upper_main_rate(c, alpha) +
                           0.5 * std::log(static_cast<double>(n) / kTwoPi) + std::log(ln_u));
}

LogReal naor_upper(const BigCount& u, std::uint64_t n, std::uint64_t m) {
  const double ln_u = log_big(u);
  if (ln_u <= 0.0) {
    return LogReal::zero();
  }
  const double a = static_cast<double>(n) / static_cast<double>(m);
  const double md = static_cast<double>(m);
  return LogReal::from_log(0.5 * md * std::log(kTwoPi * a) + md / (12.0 * a) +
                           0.5 * std::log(static_cast<double>(n)) + std::log(ln_u) -
                           0.5 * std::log(kTwoPi));
}

BigCount upper_yao(const BigCount& u, std::uint64_t n, const Rational& t) {
  if (t <= 1) {
    throw DomainError("upper_yao: requires t > 1");
  }
  const double ln_sets = ln_binom(u, n);
  const double estimate = std::floor(ln_sets / std::log(to_double(t))) + 1.0;
  if (!exact_sets_feasible(u, n) || estimate > static_cast<double>(kExactPowerLimit)) {
    return BigCount(static_cast<std::uint64_t>(estimate));
  }
  // Least r with C(u, n) * den^r < num^r.
  const BigCount sets = binom(u, n);
  const BigCount num = boost::multiprecision::numerator(t);
  const BigCount den = boost::multiprecision::denominator(t);
  const auto below = [&](std::uint64_t r) { return sets * power(den, r) < power(num, r); };
  auto r = static_cast<std::uint64_t>(std::max(1.0, estimate));
  while (r > 1 && below(r - 1)) {
    --r;
  }
  while (!below(r)) {
    ++r;
  }
  return BigCount(r);
}

ProbabilityUpper probability_upper(const BigCount& u, std::uint64_t n, const BigCount& m_c) {
  if (!exact_sets_feasible(u, n)) {
    throw BudgetExceeded("probability_upper: C(u, n) too large to compute exactly");
  }
  const BigCount sets = binom(u, n);
  if (m_c == 0 || m_c > sets) {
    throw DomainError("probability_upper: requires 0 < M_c <= C(u, n)");
  }
  ProbabilityUpper out;
  out.p = Rational(m_c, sets);

  if (m_c == sets) {
    out.tight = 1;
  } else {
    // Least r with |S_n| (1 - p)^r < 1, i.e. sets * (sets - m_c)^r < sets^r.
    const double ln_sets = log_big(sets);
    const double estimate = std::floor(ln_sets / -std::log1p(-to_double(out.p))) + 1.0;
    if (estimate > static_cast<double>(kExactPowerLimit)) {
      out.tight = BigCount(static_cast<std::uint64_t>(estimate));
    } else {
      const BigCount miss = sets - m_c;
      const auto below = [&](std::uint64_t r) { return sets * power(miss, r) < power(sets, r); };
      auto r = static_cast<std::uint64_t>(std::max(1.0, estimate));
      while (r > 1 && below(r - 1)) {
        --r;
      }
      while (!below(r)) {
        ++r;
      }
      out.tight = BigCount(r);
    }
  }

  const double ln_u = log_big(u);
  if (ln_u <= 0.0) {
    out.loose_value = LogReal::zero();
    out.loose = 0;
  } else {
    out.loose_value = LogReal::from_log(log_big(sets) - log_big(m_c) +
                                        std::log(static_cast<double>(n)) + std::log(ln_u));
    out.loose = integer_ceiling(out.loose_value.value()).value_or(BigCount(0));
  }
  return out;
}

std::vector<BoundEntry> comparison_bounds(const BoundParams& p) {
  std::vector<BoundEntry> out;
  const double md = static_cast<double>(p.m);
  const double nd = static_cast<double>(p.n);
  const double ln_u = p.ln_u();
  const bool c_is_one = p.c == 1;

  // Fredman-Komlos: perfect hashing, n <= m and c = 1 (with n >= m: n = m).
  {
    const bool applicable = p.n <= p.m && c_is_one && ln_u > 0.0;
    const std::string note = applicable ? "order-of-growth statement, hidden constant set to 1"
                                        : "only for n <= m and c = 1";
    LogReal lower;
    LogReal upper;
    if (applicable) {
      lower = LogReal::from_log((nd - 1.0) * std::log(md) + std::log(ln_u) +
                                log_factorial(md - nd + 1.0) - log_factorial(md) -
                                std::log(std::log(md - nd + 2.0)));
      const double ln_q = log_factorial(md) - log_factorial(md - nd) - nd * std::log(md);
      const double q = std::exp(ln_q);
      // -ln(1 - q) = q (1 + O(q)) once q underflows
      const double ln_rate = ln_q < -30.0 ? ln_q : std::log(-std::log1p(-q));
      upper = q >= 1.0 ? LogReal::from_value(1.0)
                       : LogReal::from_log(std::log(nd * ln_u) - ln_rate);
    }
    out.push_back(entry("lower.fk", BoundKind::lower, lower, applicable, note));
    out.push_back(entry("upper.fk", BoundKind::upper, upper, applicable, note));
    out[out.size() - 2].asymptotic = true;
    out.back().asymptotic = true;
  }

  // Mehlhorn's estimate for c = 1 and its exact volume form.
  {
    const double a = to_double(p.alpha());
    auto approx = entry("lower.mehlhorn", BoundKind::lower,
                        LogReal::from_log(0.5 * (md - 1.0) * std::log(kTwoPi * a) -
                                          0.5 * std::log(md)),
                        c_is_one, c_is_one ? "Stirling approximation" : "only for c = 1");
    approx.asymptotic = true;
    out.push_back(approx);

    const bool divisible = p.u % p.m == 0 && p.n % p.m == 0;
    const bool exact_ok = c_is_one && divisible && exact_sets_feasible(p.u, p.n);
    BoundEntry exact = entry("lower.mehlhorn.exact", BoundKind::lower, LogReal::zero(), exact_ok,
                             exact_ok ? "" : "only for c = 1 with m | u and m | n");
    if (exact_ok) {
      const BigCount per_cell = binom(BigCount(p.u / p.m), p.n / p.m);
      const BigCount m_1 = power(per_cell, p.m);
      const BigCount sets = binom(p.u, p.n);
      exact.value = LogReal::from_rational(Rational(sets, m_1));
      exact.integer = ceil_of(Rational(sets, m_1));
    }
    out.push_back(exact);
  }
  return out;
}

BoundReport bound_report(const BoundParams& p) {
  BoundReport report;
  report.params = p;
  report.ln_sets = ln_binom(p.u, p.n);
  if (exact_sets_feasible(p.u, p.n)) {
    report.sets = binom(p.u, p.n);
  }
  const Rational threshold = p.threshold();
  const std::uint64_t cap = floor_of(threshold).convert_to<std::uint64_t>();
  report.m_c = balanced_m_c(p, cap);

  // lower.volume
  {
    BoundEntry e = entry("lower.volume", BoundKind::lower, LogReal::zero(), false);
    if (!report.m_c || !report.sets) {
      e.validity_note = "M_c not computed at this size";
    } else if (*report.m_c == 0) {
      e.validity_note = "M_c = 0: no function hashes any set c-ideally, no c-ideal family exists";
    } else {
      const Rational ratio(*report.sets, *report.m_c);
      e.value = LogReal::from_rational(ratio);
      e.integer = ceil_of(ratio);
      e.valid = true;
    }
    report.entries.push_back(e);
  }

  // lower.main
  {
    BoundEntry e = entry("lower.main", BoundKind::lower, lower_main(p.m, p.alpha(), p.c, p.eps),
                         true, "asymptotic: guaranteed only for n large enough at this eps");
    e.asymptotic = true;
    e.epsilon = p.eps;
    report.entries.push_back(e);
  }

  // lower.universe, with the integer form computed exactly: least k with m^k c alpha >= u.
  {
    const auto value = lower_universe(p.u, p.m, p.n, p.c);
    BoundEntry e = entry("lower.universe", BoundKind::lower, LogReal::zero(), value.has_value(),
                         value ? "" : "requires m >= 2, u > c alpha and c alpha < n");
    if (value) {
      e.value = LogReal::from_value(std::max(0.0, *value));
      if (*value < 4096.0) {
        std::uint64_t k = 0;
        BigCount reach = 1;
        while (Rational(reach) * threshold < Rational(p.u)) {
          reach *= p.m;
          ++k;
        }
        e.integer = BigCount(k);
      }
    }
    report.entries.push_back(e);
  }

  // upper.prob.tight / upper.prob.loose
  {
    BoundEntry tight = entry("upper.prob.tight", BoundKind::upper, LogReal::zero(), false);
    BoundEntry loose = entry("upper.prob.loose", BoundKind::upper, LogReal::zero(), false);
    if (report.m_c && report.sets && *report.m_c > 0) {
      const auto prob = probability_upper(p.u, p.n, *report.m_c);
      tight.value = LogReal::from_count(prob.tight);
      tight.integer = prob.tight;
      tight.valid = true;
      loose.value = prob.loose_value;
      loose.integer = prob.loose;
      loose.valid = true;
    } else {
      const std::string note = report.m_c && *report.m_c == 0
                                   ? "M_c = 0: no c-ideal family exists"
                                   : "M_c not computed at this size";
      tight.validity_note = note;
      loose.validity_note = note;
    }
    report.entries.push_back(tight);
    report.entries.push_back(loose);
  }

  // upper.main: the non-excess lemma behind it sets d = c alpha.
  {
    const bool integral = boost::multiprecision::denominator(threshold) == 1;
    BoundEntry e = entry("upper.main", BoundKind::upper, upper_main(p.u, p.n, p.m, p.c), integral,
                         integral ? "" : "c alpha is not an integer; evaluated as written");
    e.integer = integer_ceiling(e.value.value());
    report.entries.push_back(e);
  }

  // upper.naor
  {
    BoundEntry e = entry("upper.naor", BoundKind::upper, naor_upper(p.u, p.n, p.m), true,
                         "order-of-growth statement, constant fixed to 1/sqrt(2 pi)");
    e.asymptotic = true;
    report.entries.push_back(e);
  }

  // upper.yao: valid when the Markov threshold t mu stays within c alpha.
  {
    const BigCount rounds = upper_yao(p.u, p.n, p.t);
    BoundEntry e = entry("upper.yao", BoundKind::upper, LogReal::from_count(rounds), false);
    e.integer = rounds;
    // Decide t mu <= c alpha in floating point unless the two sides are too
    // close to call; then fall back to the exact rational.
    // With m >= 2 the max load beats its mean alpha on some outcome, so
    // mu > alpha and t >= c already settles the question.
    const bool settled = p.m >= 2 && p.t >= p.c;
    const long double mu_f =
        !settled && p.n <= 2000 ? expected_tmax_float(p.n, p.m) : -1.0L;
    const long double lhs = static_cast<long double>(to_double(p.t)) * mu_f;
    const long double rhs = static_cast<long double>(to_double(threshold));
    const bool clear = mu_f >= 0 && std::abs(lhs - rhs) > 1e-9L * rhs;
    if (settled) {
      e.validity_note = "t >= c, so t mu > t alpha >= c alpha";
    } else if (p.n <= 40 || (!clear && p.n <= 200)) {
      const Rational mu = expected_tmax(p.n, p.m);
      e.valid = threshold >= p.t * mu;
      e.validity_note = "t mu = " + to_string(p.t * mu) + (e.valid ? " <= " : " > ") +
                        "c alpha = " + to_string(threshold);
    } else if (clear) {
      e.valid = lhs <= rhs;
      e.validity_note = "t mu ~ " + std::to_string(static_cast<double>(lhs)) +
                        (e.valid ? " <= " : " > ") + "c alpha = " + to_string(threshold);
    } else {
      e.validity_note = "E[max load] not computed at this size";
    }
    report.entries.push_back(e);
  }

  for (auto& e : comparison_bounds(p)) {
    report.entries.push_back(std::move(e));
  }
  return report;
}

AdviceReport advice_report(const BoundReport& report) {
  const auto& p = report.params;
  AdviceReport out;
  out.upper_main_rate = upper_main_rate(p.c, p.alpha());

  const auto bits = [](const BoundEntry& e) -> std::optional<double> {
    if (!e.valid) {
      return std::nullopt;
    }
    return std::max(0.0, e.value.log2());
  };

  const double gap = p.ln_u() - std::log(to_double(p.threshold()));
  if (p.m >= 2 && gap > 0.0 && p.threshold() < Rational(p.n)) {
    out.lower_easy =
        std::max(0.0, std::log(gap) - std::log(std::log(static_cast<double>(p.m))));
  }
  out.lower_easy_bits = bits(report.at("lower.universe"));
  out.lower_main = bits(report.at("lower.main"));
  out.upper_main = bits(report.at("upper.main"));
  out.upper_yao = bits(report.at("upper.yao"));

  out.notes.push_back("lower_easy is in nats as stated; lower_easy_bits is log2 of lower.universe");
  if (p.c >= Rational(p.m)) {
    out.upper_main = 0.0;
    out.upper_yao = 0.0;
    out.notes.push_back("c >= m: any single function is c-ideal, upper bounds collapse to 0 bits");
  }
  if (p.c == 1 && p.alpha() == 1) {
    out.notes.push_back("per-cell rate at c = alpha = 1 is 0.5 ln(2 pi) + 1/12 nats");
  }
  return out;
}

}  // namespace cideal

#include "cideal/distributions.hpp"

#include "cideal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace cideal {

namespace {

void require_load_vector(std::span<const std::uint64_t> lv, std::uint64_t n, std::uint64_t m) {
  if (lv.size() != m) {
    throw DomainError("load vector has " + std::to_string(lv.size()) + " entries, expected m=" +
                      std::to_string(m));
  }
  if (std::accumulate(lv.begin(), lv.end(), std::uint64_t{0}) != n) {
    throw DomainError("load vector does not sum to n=" + std::to_string(n));
  }
}

}  // namespace

ExactProb hypergeometric_marginal_le(std::uint64_t u, std::uint64_t beta, std::uint64_t n,
                                     std::uint64_t cap) {
  if (beta > u || n > u) {
    throw DomainError("hypergeometric_marginal_le: requires beta <= u and n <= u");
  }
  BigCount favourable = 0;
  for (std::uint64_t l = 0; l <= std::min({cap, beta, n}); ++l) {
    favourable += binom(beta, l) * binom(u - beta, n - l);
  }
  return Rational(favourable, binom(u, n));
}

ExactProb multinomial_pmf(std::span<const std::uint64_t> lv, std::uint64_t n, std::uint64_t m) {
  require_load_vector(lv, n, m);
  return Rational(multinomial(lv), power(BigCount(m), n));
}

ExactProb conditioned_poisson_pmf(std::span<const std::uint64_t> lv, std::uint64_t n,
                                  std::uint64_t m) {
  require_load_vector(lv, n, m);
  const Rational alpha(n, m);
  // Joint mass of the Y_i without the e^-alpha factors ...
  Rational joint = 1;
  for (auto l : lv) {
    joint *= power(alpha, l) / Rational(factorial(l));
  }
  // ... over the mass of their sum Y ~ Poisson(n) without e^-n; the two
  // exponentials agree because m * alpha = n.
  const Rational sum_mass(power(BigCount(n), n), factorial(n));
  return joint / sum_mass;
}

ExactProb p_tmax_le(std::uint64_t n, std::uint64_t m, std::uint64_t cap) {
  if (m == 0) {
    throw DomainError("p_tmax_le: m must be >= 1");
  }
  if (cap >= n) {
    return 1;
  }
  if (cap * m < n) {
    return 0;
  }
  // row[s][l] = C(s, l)
  std::vector<std::vector<BigCount>> row(n + 1);
  for (std::uint64_t s = 0; s <= n; ++s) {
    row[s].resize(std::min(cap, s) + 1);
    row[s][0] = 1;
    for (std::uint64_t l = 1; l < row[s].size(); ++l) {
      row[s][l] = row[s][l - 1] * (s - l + 1) / l;
    }
  }
  // sequences[s]: number of length-s throw sequences into the cells so far
  // with every load <= cap.
  std::vector<BigCount> sequences(n + 1, BigCount(0));
  sequences[0] = 1;
  std::vector<BigCount> next(n + 1);
  for (std::uint64_t cell = 0; cell < m; ++cell) {
    for (std::uint64_t s = 0; s <= n; ++s) {
      BigCount acc = 0;
      for (std::uint64_t l = 0; l <= std::min(cap, s); ++l) {
        if (sequences[s - l] != 0) {
          acc += row[s][l] * sequences[s - l];
        }
      }
      next[s] = std::move(acc);
    }
    sequences.swap(next);
  }
  return Rational(sequences[n], power(BigCount(m), n));
}

ExactProb binomial_cdf(std::uint64_t n, std::uint64_t m, std::uint64_t cap) {
  if (m == 0) {
    throw DomainError("binomial_cdf: m must be >= 1");
  }
  BigCount mass = 0;
  for (std::uint64_t k = 0; k <= std::min(cap, n); ++k) {
    mass += binom(n, k) * power(BigCount(m - 1), n - k);
  }
  return Rational(mass, power(BigCount(m), n));
}

Rational expected_tmax(std::uint64_t n, std::uint64_t m) {
  Rational expectation = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    expectation += 1 - p_tmax_le(n, m, k);
  }
  return expectation;
}

LogReal binomial_tail_lb(std::uint64_t n, std::uint64_t m, const Rational& c) {
  if (m == 0 || n == 0) {
    throw DomainError("binomial_tail_lb: n, m must be >= 1");
  }
  const Rational alpha(n, m);
  const Rational k = c * alpha + 1;
  if (k > n) {
    throw DomainError("binomial_tail_lb: requires c*alpha + 1 <= n");
  }
  const double a = alpha.convert_to<double>();
  const double kd = k.convert_to<double>();
  const double nd = static_cast<double>(n);
  return LogReal::from_log(nd * std::log1p(-a / nd) + kd * std::log(a / kd));
}

NonExcessBound tmax_lower_bound(std::uint64_t n, std::uint64_t m, const Rational& c) {
  if (c < 1) {
    throw DomainError("tmax_lower_bound: requires c >= 1");
  }
  const Rational alpha(n, m);
  const Rational threshold = c * alpha;
  NonExcessBound out;
  out.d = floor_of(threshold).convert_to<std::uint64_t>();
  out.floored = Rational(out.d) != threshold;
  if (out.d < 1) {
    throw DomainError("tmax_lower_bound: requires floor(c*alpha) >= 1");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double dd = static_cast<double>(out.d);
  const double cd = c.convert_to<double>();
  const double ad = alpha.convert_to<double>();
  const double log_value = 0.5 * std::log(two_pi * nd) - nd / (2.0 * dd) * std::log(two_pi * dd) -
                           nd * std::log(cd) - md / (12.0 * cd * dd) +
                           md * (1.0 - 1.0 / cd) * std::log(ad + 1.0);
  out.value = LogReal::from_log(log_value);
  return out;
}

void for_each_composition(std::uint64_t n, std::uint64_t m, std::uint64_t cap,
                          const std::function<void(std::span<const std::uint64_t>)>& visit) {
  if (m == 0) {
    if (n == 0) {
      visit({});
    }
    return;
  }
  LoadVector parts(m, 0);
  const std::function<void(std::uint64_t, std::uint64_t)> fill = [&](std::uint64_t index,
                                                                     std::uint64_t remaining) {
    const std::uint64_t cells_left = m - index;
    if (cells_left == 1) {
      if (remaining <= cap) {
        parts[index] = remaining;
        visit(parts);
      }
      return;
    }
    for (std::uint64_t l = 0; l <= std::min(cap, remaining); ++l) {
      if (remaining - l > cap * (cells_left - 1)) {
        continue;
      }
      parts[index] = l;
      fill(index + 1, remaining - l);
    }
  };
  fill(0, n);
}

MinProductCheck min_product_factorials_check(std::uint64_t n, std::uint64_t m, std::uint64_t d,
                                             const Budget& budget) {
  if (d == 0 || n % d != 0) {
    throw DomainError("min_product_factorials_check: requires d >= 1 and d | n");
  }
  if (composition_count(n, m, d) > budget.max_sets) {
    throw BudgetExceeded("min_product_factorials_check: too many compositions");
  }
  MinProductCheck check;
  check.expected = Rational(1) / Rational(power(factorial(d), n / d));
  BigCount best_product = 0;  // max of prod l_i!
  for_each_composition(n, m, d, [&](std::span<const std::uint64_t> lv) {
    BigCount product = 1;
    for (auto l : lv) {
      product *= factorial(l);
    }
    if (product > best_product) {
      best_product = product;
      check.argmin.clear();
    }
    if (product == best_product) {
      check.argmin.emplace_back(lv.begin(), lv.end());
    }
  });
  if (best_product == 0) {
    return check;  // no composition fits
  }
  check.minimum = Rational(1) / Rational(best_product);
  const bool extremal_patterns =
      std::all_of(check.argmin.begin(), check.argmin.end(), [d](const LoadVector& lv) {
        return std::all_of(lv.begin(), lv.end(), [d](auto l) { return l == 0 || l == d; });
      });
  check.holds = check.minimum == check.expected && extremal_patterns;
  return check;
}

Rational replacement_ratio(std::uint64_t u, std::uint64_t n) {
  if (n < 1 || u < n) {
    throw DomainError("replacement_ratio: requires u >= n >= 1");
  }
  return Rational(binom(u, n), binom(u + n - 1, n));
}

}  // namespace cideal

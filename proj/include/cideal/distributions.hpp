#pragma once

// Exact load distributions: hypergeometric marginals (drawing without
// replacement), multinomial joints (with replacement) and the Poisson
// conditioning identity, plus the closed forms derived from them.

#include "cideal/combinatorics.hpp"
#include "cideal/hashspace.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cideal {

/// Exact probability in [0, 1].
using ExactProb = Rational;

/// Cell loads (l_1..l_m).
using LoadVector = std::vector<std::uint64_t>;

/// P(load of a fiber of size beta <= cap) for a uniform n-subset of [u].
ExactProb hypergeometric_marginal_le(std::uint64_t u, std::uint64_t beta, std::uint64_t n,
                                     std::uint64_t cap);

/// Multinomial(n; 1/m, ..., 1/m) mass at lv. Throws DomainError unless
/// lv has m entries summing to n.
ExactProb multinomial_pmf(std::span<const std::uint64_t> lv, std::uint64_t n, std::uint64_t m);

/// P((Y_1..Y_m) = lv | Y_1 + ... + Y_m = n) for i.i.d. Y_i ~ Poisson(n/m).
/// The e^-alpha factors cancel against e^-n, leaving
///   prod(alpha^l_i / l_i!) / (n^n / n!).
ExactProb conditioned_poisson_pmf(std::span<const std::uint64_t> lv, std::uint64_t n,
                                  std::uint64_t m);

/// P(max load <= cap) for n independent uniform throws into m cells.
ExactProb p_tmax_le(std::uint64_t n, std::uint64_t m, std::uint64_t cap);

/// P(T_1 <= cap) for T_1 ~ Binomial(n, 1/m).
ExactProb binomial_cdf(std::uint64_t n, std::uint64_t m, std::uint64_t cap);

/// Exact E[max load] for n throws into m cells.
Rational expected_tmax(std::uint64_t n, std::uint64_t m);

/// (1 - alpha/n)^n * (alpha / (c alpha + 1))^(c alpha + 1), a lower bound on
/// P(T_1 > c alpha). Requires c alpha + 1 <= n.
LogReal binomial_tail_lb(std::uint64_t n, std::uint64_t m, const Rational& c);

struct NonExcessBound {
  LogReal value;
  std::uint64_t d = 0;   // floor(c alpha)
  bool floored = false;  // c alpha was not an integer
};

/// sqrt(2 pi n) / (2 pi d)^(n/(2d)) * c^-n * e^(-m/(12 c d)) * (alpha + 1)^(m (1 - 1/c))
/// with d = floor(c alpha); a lower bound on P(T_max <= d). Requires d >= 1.
NonExcessBound tmax_lower_bound(std::uint64_t n, std::uint64_t m, const Rational& c);

struct MinProductCheck {
  bool holds = false;
  Rational minimum;   // min over capped compositions of prod 1/l_i!
  Rational expected;  // 1 / (d!)^(n/d)
  std::vector<LoadVector> argmin;
};

/// Brute force over every composition of n into m parts <= d. Requires d | n.
MinProductCheck min_product_factorials_check(std::uint64_t n, std::uint64_t m, std::uint64_t d,
                                             const Budget& budget = {});

/// |S_n| / |K_n| = C(u, n) / C(u + n - 1, n).
Rational replacement_ratio(std::uint64_t u, std::uint64_t n);

/// Visits every (l_1..l_m) with l_i <= cap and sum n, in lexicographic order.
void for_each_composition(std::uint64_t n, std::uint64_t m, std::uint64_t cap,
                          const std::function<void(std::span<const std::uint64_t>)>& visit);

}  // namespace cideal

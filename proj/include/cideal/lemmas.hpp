#pragma once

// Grid checks of the counting and load-distribution inequalities. Every check
// compares exact rationals except the non-excess bound, whose closed form is
// compared in log space.

#include "cideal/combinatorics.hpp"
#include "cideal/hashspace.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cideal {

struct LemmaCheck {
  std::string lemma;     // e.g. "negative-dependence.hypergeometric"
  std::string instance;  // e.g. "u=8 m=2 n=4 c=1"
  std::string relation;  // "==" or "<="
  std::string lhs;
  std::string rhs;
  bool pass = false;
};

struct LemmaGrid {
  // Poissonization: every composition for n <= max_n, m <= max_m.
  std::uint64_t poisson_max_n = 12;
  std::uint64_t poisson_max_m = 4;
  // Negative dependence, replacement direction and the sandwich; n runs over [m, u].
  std::vector<std::uint64_t> dist_u{6, 8, 10, 12};
  std::vector<std::uint64_t> dist_m{2, 3};
  std::vector<Rational> dist_c{Rational(1), Rational(3, 2), Rational(2)};
  // Non-excess bound and composition floor: n = alpha * m.
  std::vector<std::uint64_t> excess_m{2, 3, 4, 5};
  std::vector<std::uint64_t> excess_alpha{1, 2, 3};
  std::vector<std::uint64_t> excess_c{1, 2};
  double log_tolerance = 1e-9;
  // Balance theorem: u <= balance_max_u, n in [m, balance_max_n], cap binding.
  std::uint64_t balance_max_u = 14;
  std::uint64_t balance_max_n = 6;
  std::vector<std::uint64_t> balance_m{2, 3};
  std::vector<Rational> balance_c{Rational(1), Rational(3, 2), Rational(2)};
};

std::vector<LemmaCheck> check_poissonization(const LemmaGrid& grid = {});
std::vector<LemmaCheck> check_negative_dependence(const LemmaGrid& grid = {});
std::vector<LemmaCheck> check_replacement(const LemmaGrid& grid = {});
/// tmax_lower_bound <= p_tmax_le <= min(1, binomial product), on the
/// distribution grid; the lower side is checked where floor(c alpha) >= 1.
std::vector<LemmaCheck> check_tmax_sandwich(const LemmaGrid& grid = {});
std::vector<LemmaCheck> check_non_excess(const LemmaGrid& grid = {});
std::vector<LemmaCheck> check_balance(const LemmaGrid& grid = {}, const Budget& budget = {});
std::vector<LemmaCheck> check_min_product(const LemmaGrid& grid = {}, const Budget& budget = {});
/// composition_count(n, m, c alpha) >= (alpha + 1)^(m (1 - 1/c)), integer c.
std::vector<LemmaCheck> check_composition_floor(const LemmaGrid& grid = {});

std::vector<LemmaCheck> check_all_lemmas(const LemmaGrid& grid = {}, const Budget& budget = {});

bool all_pass(const std::vector<LemmaCheck>& checks);

}  // namespace cideal

#include "cideal/lemmas.hpp"

#include "cideal/distributions.hpp"
#include "cideal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

namespace cideal {

namespace {

std::string instance_text(std::uint64_t u, std::uint64_t m, std::uint64_t n, const Rational& c) {
  return "u=" + std::to_string(u) + " m=" + std::to_string(m) + " n=" + std::to_string(n) +
         " c=" + to_string(c);
}

std::string instance_text(std::uint64_t m, std::uint64_t n, const Rational& c) {
  return "m=" + std::to_string(m) + " n=" + std::to_string(n) + " c=" + to_string(c);
}

std::string decimal(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", x);
  return buffer;
}

LemmaCheck exact_le(std::string lemma, std::string instance, const Rational& lhs,
                    const Rational& rhs) {
  return LemmaCheck{std::move(lemma), std::move(instance), "<=", to_string(lhs), to_string(rhs),
                    lhs <= rhs};
}

Rational balanced_marginal_product(std::uint64_t u, std::uint64_t m, std::uint64_t n,
                                   std::uint64_t cap) {
  Rational product = 1;
  for (auto beta : Decomposition::balanced(u, m).betas) {
    product *= hypergeometric_marginal_le(u, beta, n, cap);
  }
  return product;
}

template <typename Visit>
void for_each_dist_point(const LemmaGrid& grid, Visit visit) {
  for (auto u : grid.dist_u) {
    for (auto m : grid.dist_m) {
      for (const auto& c : grid.dist_c) {
        for (std::uint64_t n = m; n <= u; ++n) {
          visit(Params::make(u, m, n, c));
        }
      }
    }
  }
}

}  // namespace

std::vector<LemmaCheck> check_poissonization(const LemmaGrid& grid) {
  std::vector<LemmaCheck> out;
  for (std::uint64_t m = 1; m <= grid.poisson_max_m; ++m) {
    for (std::uint64_t n = 1; n <= grid.poisson_max_n; ++n) {
      std::uint64_t compositions = 0;
      std::uint64_t mismatches = 0;
      // Conditioned expectation of the indicator {max <= d}, for every d.
      std::vector<Rational> below(n + 1, Rational(0));
      for_each_composition(n, m, n, [&](std::span<const std::uint64_t> lv) {
        ++compositions;
        const auto poisson = conditioned_poisson_pmf(lv, n, m);
        if (poisson != multinomial_pmf(lv, n, m)) {
          ++mismatches;
        }
        const auto peak = *std::max_element(lv.begin(), lv.end());
        for (auto d = peak; d <= n; ++d) {
          below[d] += poisson;
        }
      });
      const std::string instance = "m=" + std::to_string(m) + " n=" + std::to_string(n);
      out.push_back(LemmaCheck{"poissonization", instance, "==",
                               std::to_string(mismatches) + " mismatches",
                               std::to_string(compositions) + " compositions", mismatches == 0});
      std::uint64_t failed_d = 0;
      for (std::uint64_t d = 0; d <= n; ++d) {
        if (below[d] != p_tmax_le(n, m, d)) {
          ++failed_d;
        }
      }
      out.push_back(LemmaCheck{"conditioned-expectation", instance, "==",
                               std::to_string(failed_d) + " mismatches",
                               std::to_string(n + 1) + " thresholds", failed_d == 0});
    }
  }
  return out;
}

std::vector<LemmaCheck> check_negative_dependence(const LemmaGrid& grid) {
  std::vector<LemmaCheck> out;
  for_each_dist_point(grid, [&](const Params& p) {
    const auto instance = instance_text(p.u(), p.m(), p.n(), p.c());
    out.push_back(exact_le("negative-dependence.hypergeometric", instance,
                           exact_ideal_probability(p).probability(),
                           balanced_marginal_product(p.u(), p.m(), p.n(), p.cap())));
    out.push_back(exact_le("negative-dependence.binomial", instance,
                           p_tmax_le(p.n(), p.m(), p.cap()),
                           power(binomial_cdf(p.n(), p.m(), p.cap()), p.m())));
  });
  return out;
}

std::vector<LemmaCheck> check_replacement(const LemmaGrid& grid) {
  std::vector<LemmaCheck> out;
  for_each_dist_point(grid, [&](const Params& p) {
    out.push_back(exact_le("replacement", instance_text(p.u(), p.m(), p.n(), p.c()),
                           p_tmax_le(p.n(), p.m(), p.cap()),
                           exact_ideal_probability(p).probability()));
  });
  return out;
}

std::vector<LemmaCheck> check_tmax_sandwich(const LemmaGrid& grid) {
  std::vector<LemmaCheck> out;
  // p_tmax_le does not depend on u; visit each (m, n, c) once.
  std::vector<std::tuple<std::uint64_t, std::uint64_t, Rational>> seen;
  for_each_dist_point(grid, [&](const Params& p) {
    const auto key = std::make_tuple(p.m(), p.n(), p.c());
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      return;
    }
    seen.push_back(key);
    const auto instance = instance_text(p.m(), p.n(), p.c());
    const auto exact = p_tmax_le(p.n(), p.m(), p.cap());
    const auto product = power(binomial_cdf(p.n(), p.m(), p.cap()), p.m());
    out.push_back(exact_le("tmax-sandwich.upper", instance, exact, std::min(Rational(1), product)));
    // m cap < n leaves no ideal set at all; the bound's domain needs the cap reachable.
    if (p.cap() >= 1 && p.m() * p.cap() >= p.n()) {
      const auto bound = tmax_lower_bound(p.n(), p.m(), p.c());
      const double lhs = bound.value.log();
      const double rhs = LogReal::from_rational(exact).log();
      out.push_back(LemmaCheck{"tmax-sandwich.lower", instance, "<=", "ln " + decimal(lhs),
                               "ln " + decimal(rhs), lhs <= rhs + grid.log_tolerance});
    }
  });
  return out;
}

std::vector<LemmaCheck> check_non_excess(const LemmaGrid& grid) {
  std::vector<LemmaCheck> out;
  for (auto m : grid.excess_m) {
    for (auto alpha : grid.excess_alpha) {
      for (auto c : grid.excess_c) {
        const std::uint64_t n = alpha * m;
        const auto bound = tmax_lower_bound(n, m, Rational(c));
        const auto exact = p_tmax_le(n, m, bound.d);
        const double lhs = bound.value.log();
        const double rhs = LogReal::from_rational(exact).log();
        out.push_back(LemmaCheck{"non-excess", instance_text(m, n, Rational(c)), "<=",
                                 "ln " + decimal(lhs), "ln " + decimal(rhs),
                                 lhs <= rhs + grid.log_tolerance});
      }
    }
  }
  return out;
}

std::vector<LemmaCheck> check_balance(const LemmaGrid& grid, const Budget& budget) {
  std::vector<LemmaCheck> out;
  for (auto m : grid.balance_m) {
    for (std::uint64_t n = m; n <= grid.balance_max_n; ++n) {
      for (const auto& c : grid.balance_c) {
        for (std::uint64_t u = n; u <= grid.balance_max_u; ++u) {
          const auto p = Params::make(u, m, n, c);
          if (!p.cap_binds()) {
            continue;
          }
          const auto check = balance_extremality_check(u, m, n, c, budget);
          std::string argmax;
          if (check.argmax.size() > 4) {
            argmax = std::to_string(check.argmax.size()) + " of " +
                     std::to_string(check.decompositions) + " decompositions, count " +
                     to_string(check.best);
          } else {
            for (const auto& d : check.argmax) {
              argmax += argmax.empty() ? "(" : " (";
              for (std::size_t i = 0; i < d.betas.size(); ++i) {
                argmax += (i ? "," : "") + std::to_string(d.betas[i]);
              }
              argmax += ")";
            }
          }
          out.push_back(LemmaCheck{check.degenerate_tie ? "balance.degenerate-tie" : "balance",
                                   instance_text(u, m, n, c), "==", "argmax " + argmax,
                                   "balanced", check.holds});
        }
      }
    }
  }
  return out;
}

std::vector<LemmaCheck> check_min_product(const LemmaGrid& grid, const Budget& budget) {
  std::vector<LemmaCheck> out;
  for (auto m : grid.excess_m) {
    for (std::uint64_t d = 1; d <= 3; ++d) {
      // n = k d with the {0, d} patterns fitting into m cells.
      for (std::uint64_t k = 1; k <= m; ++k) {
        const std::uint64_t n = k * d;
        const auto check = min_product_factorials_check(n, m, d, budget);
        out.push_back(LemmaCheck{"min-product-factorials",
                                 "m=" + std::to_string(m) + " n=" + std::to_string(n) +
                                     " d=" + std::to_string(d),
                                 "==", to_string(check.minimum), to_string(check.expected),
                                 check.holds});
      }
    }
  }
  return out;
}

std::vector<LemmaCheck> check_composition_floor(const LemmaGrid& grid) {
  std::vector<LemmaCheck> out;
  for (std::uint64_t m = 2; m <= 6; ++m) {
    for (std::uint64_t alpha = 1; alpha <= 4; ++alpha) {
      for (auto c : grid.excess_c) {
        // count >= (alpha+1)^(m (c-1) / c)  <=>  count^c >= (alpha+1)^(m (c-1))
        const auto count = composition_count(alpha * m, m, c * alpha);
        const auto lhs = power(count, c);
        const auto rhs = power(BigCount(alpha + 1), m * (c - 1));
        out.push_back(LemmaCheck{"composition-floor",
                                 instance_text(m, alpha * m, Rational(c)), ">=",
                                 to_string(count) + "^" + std::to_string(c),
                                 std::to_string(alpha + 1) + "^" + std::to_string(m * (c - 1)),
                                 lhs >= rhs});
      }
    }
  }
  return out;
}

std::vector<LemmaCheck> check_all_lemmas(const LemmaGrid& grid, const Budget& budget) {
  std::vector<LemmaCheck> out;
  const auto append = [&out](std::vector<LemmaCheck> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()),
               std::make_move_iterator(more.end()));
  };
  append(check_poissonization(grid));
  append(check_negative_dependence(grid));
  append(check_replacement(grid));
  append(check_tmax_sandwich(grid));
  append(check_non_excess(grid));
  append(check_balance(grid, budget));
  append(check_min_product(grid, budget));
  append(check_composition_floor(grid));
  return out;
}

bool all_pass(const std::vector<LemmaCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.pass; });
}

}  // namespace cideal

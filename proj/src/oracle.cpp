#include "cideal/oracle.hpp"

#include "cideal/errors.hpp"
#include "pascal.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace cideal {

CoverageBitmap coverage_bitmap(const HashFunction& h, std::uint32_t n, std::uint32_t cap) {
  const std::uint32_t u = h.u();
  const BigCount total = binom(u, n);
  if (total > std::numeric_limits<std::uint32_t>::max()) {
    throw BudgetExceeded("coverage_bitmap: C(u, n) = " + total.str() + " is too large");
  }
  CoverageBitmap bits(total.convert_to<std::size_t>());
  if (n > u) {
    return bits;
  }
  const detail::PascalTable choose(u, n);
  std::vector<std::uint32_t> loads(h.m() + 1, 0);
  std::uint64_t rank = 0;

  // Keys are added in increasing order, so subsets are visited in lex order and
  // a pruned branch skips exactly C(u - x, remaining) ranks.
  const std::function<void(std::uint32_t, std::uint32_t)> walk = [&](std::uint32_t depth,
                                                                     std::uint32_t first) {
    if (depth == n) {
      bits.set(rank++);
      return;
    }
    const std::uint32_t remaining = n - depth - 1;
    for (std::uint32_t x = first; x + remaining <= u; ++x) {
      auto& load = loads[h(x)];
      if (load + 1 > cap) {
        rank += choose(u - x, remaining);
        continue;
      }
      ++load;
      walk(depth + 1, x + 1);
      --load;
    }
  };
  walk(0, 1);
  return bits;
}

BigCount count_ideal_sets(const Decomposition& d, std::uint64_t n, std::uint64_t cap) {
  std::vector<BigCount> poly(n + 1, BigCount(0));
  poly[0] = 1;
  std::vector<BigCount> next(n + 1);
  for (const auto beta : d.betas) {
    const std::uint64_t limit = std::min({cap, beta, n});
    std::vector<BigCount> cell(limit + 1);
    for (std::uint64_t l = 0; l <= limit; ++l) {
      cell[l] = binom(beta, l);
    }
    for (std::uint64_t s = 0; s <= n; ++s) {
      BigCount acc = 0;
      for (std::uint64_t l = 0; l <= std::min(limit, s); ++l) {
        if (poly[s - l] != 0) {
          acc += cell[l] * poly[s - l];
        }
      }
      next[s] = std::move(acc);
    }
    poly.swap(next);
  }
  return poly[n];
}

BigCount count_ideal_sets_enumerated(const HashFunction& h, std::uint32_t n, std::uint32_t cap,
                                     const Budget& budget) {
  require_enumerable(h.u(), n, budget);
  std::vector<std::uint32_t> loads(h.m() + 1);
  BigCount count = 0;
  for_each_key_set(h.u(), n, [&](std::span<const std::uint32_t> keys) {
    std::fill(loads.begin(), loads.end(), 0);
    std::uint32_t worst = 0;
    for (auto key : keys) {
      worst = std::max(worst, ++loads[h(key)]);
    }
    if (worst <= cap) {
      ++count;
    }
    return true;
  });
  return count;
}

IdealCount exact_ideal_probability(const Params& p) {
  return IdealCount{
      count_ideal_sets(Decomposition::balanced(p.u(), p.m()), p.n(), p.cap()),
      binom(p.u(), p.n()),
  };
}

std::vector<Decomposition> sorted_decompositions(std::uint64_t u, std::uint64_t m,
                                                 const Budget& budget) {
  std::vector<Decomposition> out;
  if (m == 0) {
    return out;
  }
  std::vector<std::uint64_t> parts(m, 0);
  const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)> fill =
      [&](std::uint64_t index, std::uint64_t remaining, std::uint64_t largest) {
        if (index + 1 == m) {
          if (remaining <= largest) {
            parts[index] = remaining;
            if (out.size() >= budget.max_pool) {
              throw BudgetExceeded("more than " + std::to_string(budget.max_pool) +
                                   " decompositions");
            }
            out.push_back(Decomposition{parts});
          }
          return;
        }
        // The remaining m - index parts are each <= parts[index].
        for (std::uint64_t part = std::min(remaining, largest);; --part) {
          if (part * (m - index) < remaining) {
            break;
          }
          parts[index] = part;
          fill(index + 1, remaining - part, part);
          if (part == 0) {
            break;
          }
        }
      };
  fill(0, u, u);
  return out;
}

BalanceCheck balance_extremality_check(std::uint64_t u, std::uint64_t m, std::uint64_t n,
                                       const Rational& c, const Budget& budget) {
  const Params p = Params::make(u, m, n, c);
  const auto decompositions = sorted_decompositions(u, m, budget);
  const Decomposition balanced = Decomposition::balanced(u, m);

  BalanceCheck check;
  check.decompositions = decompositions.size();
  BigCount worst;
  bool first = true;
  for (const auto& d : decompositions) {
    const BigCount count = count_ideal_sets(d, n, p.cap());
    if (first || count > check.best) {
      check.best = count;
      check.argmax.clear();
    }
    if (first || count < worst) {
      worst = count;
    }
    first = false;
    if (count == check.best) {
      check.argmax.push_back(d);
    }
  }
  const bool balanced_is_max =
      std::find(check.argmax.begin(), check.argmax.end(), balanced) != check.argmax.end();
  // Saturated: some decomposition hashes every n-subset ideally, so the cap never binds
  // inside a fiber and all decompositions with fibers <= cap (or >= n) tie.
  const bool saturated = check.best == binom(u, n);
  check.degenerate_tie = worst == check.best || saturated;
  if (check.degenerate_tie) {
    const auto vacuous = [&](const Decomposition& d) {
      return std::all_of(d.betas.begin(), d.betas.end(),
                         [&](std::uint64_t b) { return std::min<std::uint64_t>(b, n) <= p.cap(); });
    };
    const auto expected = static_cast<std::size_t>(
        std::count_if(decompositions.begin(), decompositions.end(), vacuous));
    check.holds = balanced_is_max && (worst == check.best || check.argmax.size() == expected);
  } else {
    check.holds = balanced_is_max && check.argmax.size() == 1;
  }
  return check;
}

CoverageReport verify_family(const Family& f, const Params& p, const Budget& budget) {
  if (f.functions.empty()) {
    throw DomainError("verify_family: empty family");
  }
  for (const auto& h : f.functions) {
    require_compatible(h, p);
  }
  CoverageReport report;
  report.total = require_enumerable(p.u(), p.n(), budget);
  report.covered = 0;
  const auto cap = p.cap();
  std::vector<std::uint32_t> loads(p.m() + 1);
  for_each_key_set(static_cast<std::uint32_t>(p.u()), static_cast<std::uint32_t>(p.n()),
                   [&](std::span<const std::uint32_t> keys) {
                     const bool covered =
                         std::any_of(f.functions.begin(), f.functions.end(), [&](const auto& h) {
                           std::fill(loads.begin(), loads.end(), 0);
                           for (auto key : keys) {
                             if (++loads[h(key)] > cap) {
                               return false;
                             }
                           }
                           return true;
                         });
                     if (covered) {
                       ++report.covered;
                     } else if (!report.uncovered_witness) {
                       report.uncovered_witness.emplace(
                           std::vector<std::uint32_t>(keys.begin(), keys.end()),
                           static_cast<std::uint32_t>(p.u()));
                     }
                     return true;
                   });
  report.is_ideal_family = !report.uncovered_witness.has_value();
  return report;
}

namespace {

struct Candidate {
  HashFunction function;
  CoverageBitmap covers;
  std::size_t count;
};

// Exact cover search: branch on the first uncovered set; some member of any
// completing family must cover it.
class CoverSearch {
 public:
  explicit CoverSearch(const std::vector<Candidate>& pool) : pool_(pool) {}

  bool solve(const CoverageBitmap& uncovered, std::size_t left, std::vector<std::size_t>& chosen) {
    ++nodes_;
    const std::size_t need = uncovered.count();
    if (need == 0) {
      return true;
    }
    if (left == 0) {
      return false;
    }
    if (left == 1) {
      for (std::size_t i = 0; i < pool_.size(); ++i) {
        if (uncovered.is_subset_of(pool_[i].covers)) {
          chosen.push_back(i);
          return true;
        }
      }
      return false;
    }
    std::size_t best_gain = 0;
    for (const auto& c : pool_) {
      best_gain = std::max(best_gain, (uncovered & c.covers).count());
    }
    if (best_gain * left < need) {
      return false;
    }
    const auto target = uncovered.find_first();
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      if (!pool_[i].covers.test(target)) {
        continue;
      }
      chosen.push_back(i);
      if (solve(uncovered - pool_[i].covers, left - 1, chosen)) {
        return true;
      }
      chosen.pop_back();
    }
    return false;
  }

  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

 private:
  const std::vector<Candidate>& pool_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

MinFamilyResult min_family_size_exact(const Params& p, std::size_t size_limit,
                                      const Budget& budget) {
  require_enumerable(p.u(), p.n(), budget);
  const auto u = static_cast<std::uint32_t>(p.u());
  const auto m = static_cast<std::uint32_t>(p.m());
  const auto n = static_cast<std::uint32_t>(p.n());
  const auto cap = static_cast<std::uint32_t>(std::min<std::uint64_t>(p.cap(), n));

  std::vector<Candidate> pool;
  for (auto& h : canonical_functions(u, m, budget)) {
    auto covers = coverage_bitmap(h, n, cap);
    const auto count = covers.count();
    pool.push_back(Candidate{std::move(h), std::move(covers), count});
  }
  MinFamilyResult result;
  result.pool_size = pool.size();

  // Descending coverage, ties by fiber signature (canonical functions are
  // their own signatures).
  std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    if (a.count != b.count) {
      return a.count > b.count;
    }
    return a.function < b.function;
  });

  const auto found = [&](std::vector<const HashFunction*> members) {
    Family family;
    family.provenance = Provenance::explicit_list;
    for (const auto* h : members) {
      family.functions.push_back(*h);
    }
    result.size = family.size();
    result.family = std::move(family);
    return result;
  };

  const std::size_t total_sets = pool.front().covers.size();
  if (size_limit >= 1 && pool.front().count == total_sets) {
    return found({&pool.front().function});
  }

  // Dominated candidates can be swapped for their dominator in any cover.
  std::vector<Candidate> reduced;
  for (const auto& c : pool) {
    const bool dominated = std::any_of(reduced.begin(), reduced.end(), [&](const Candidate& k) {
      return c.covers.is_subset_of(k.covers);
    });
    if (!dominated && c.count > 0) {
      reduced.push_back(c);
    }
  }
  result.reduced_pool = reduced.size();

  // The problem is invariant under permutations of the universe, so one member
  // may be fixed to a representative of its orbit: functions with equal sorted
  // fiber sizes lie in one orbit.
  std::vector<const Candidate*> first_members;
  {
    std::map<std::vector<std::uint64_t>, bool> seen;
    for (const auto& c : pool) {
      auto sizes = c.function.decomposition().betas;
      std::sort(sizes.rbegin(), sizes.rend());
      if (!seen[sizes]) {
        seen[sizes] = true;
        first_members.push_back(&c);
      }
    }
  }

  CoverSearch search(reduced);
  for (std::size_t k = 2; k <= size_limit; ++k) {
    for (const auto* first : first_members) {
      CoverageBitmap uncovered = first->covers;
      uncovered.flip();
      std::vector<std::size_t> chosen;
      if (search.solve(uncovered, k - 1, chosen)) {
        std::vector<const HashFunction*> members{&first->function};
        for (auto i : chosen) {
          members.push_back(&reduced[i].function);
        }
        result.nodes = search.nodes();
        return found(std::move(members));
      }
    }
  }
  result.nodes = search.nodes();
  return result;
}

}  // namespace cideal

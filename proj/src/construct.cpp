#include "cideal/construct.hpp"

#include "cideal/errors.hpp"
#include "cideal/simulate.hpp"

#include <algorithm>
#include <numeric>

namespace cideal {

std::uint64_t ConstructionLog::advice_bits() const {
  std::uint64_t bits = 0;
  while ((std::uint64_t{1} << bits) < family.size()) {
    ++bits;
  }
  return bits;
}

namespace {

CoverageBitmap all_sets(const Params& p, const Budget& budget) {
  return CoverageBitmap(require_enumerable(p.u(), p.n(), budget)).set();
}

CoverageBitmap covers_of(const HashFunction& h, const Params& p) {
  return coverage_bitmap(h, static_cast<std::uint32_t>(p.n()),
                         static_cast<std::uint32_t>(std::min(p.cap(), p.n())));
}

void finish(ConstructionLog& log, const Params& p, const Budget& budget) {
  log.rounds = log.family.size();
  if (log.family.functions.empty()) {
    log.verified = false;
    log.notes.emplace_back("empty family");
    // Nothing covers anything; the first set in lexicographic order is a witness.
    log.witness = unrank_key_set(0, static_cast<std::uint32_t>(p.u()),
                                 static_cast<std::uint32_t>(p.n()));
    return;
  }
  const auto report = verify_family(log.family, p, budget);
  log.verified = report.is_ideal_family;
  log.witness = report.uncovered_witness;
}

void check_pool(const Params& p, std::span<const HashFunction> pool, const Budget& budget) {
  if (pool.empty()) {
    throw DomainError("construct: empty pool");
  }
  if (pool.size() > budget.max_pool) {
    throw BudgetExceeded("construct: pool of " + std::to_string(pool.size()) + " exceeds " +
                         std::to_string(budget.max_pool));
  }
  for (const auto& h : pool) {
    require_compatible(h, p);
  }
}

}  // namespace

std::vector<HashFunction> make_pool(const Params& p, PoolKind kind, const Budget& budget) {
  if (kind == PoolKind::balanced) {
    return balanced_functions(p, budget);
  }
  const auto u = static_cast<std::uint32_t>(p.u());
  const auto m = static_cast<std::uint32_t>(p.m());
  if (power(BigCount(m), u) > budget.max_pool) {
    throw BudgetExceeded("make_pool: m^u exceeds the pool budget");
  }
  std::vector<HashFunction> pool;
  for_each_function(u, m, [&](const HashFunction& h) {
    pool.push_back(h);
    return true;
  });
  return pool;
}

HashFunction sample_balanced(std::uint32_t u, std::uint32_t m, SplitMix64& rng) {
  std::vector<std::uint32_t> sizes(m, u / m);
  std::fill(sizes.begin(), sizes.begin() + u % m, u / m + 1);
  for (std::uint32_t i = m; i > 1; --i) {
    std::swap(sizes[i - 1], sizes[rng.uniform(i)]);
  }
  std::vector<std::uint32_t> keys(u);
  std::iota(keys.begin(), keys.end(), 0);
  for (std::uint32_t i = u; i > 1; --i) {
    std::swap(keys[i - 1], keys[rng.uniform(i)]);
  }
  std::vector<std::uint32_t> cells(u);
  std::size_t next = 0;
  for (std::uint32_t cell = 0; cell < m; ++cell) {
    for (std::uint32_t k = 0; k < sizes[cell]; ++k) {
      cells[keys[next++]] = cell + 1;
    }
  }
  return HashFunction(std::move(cells), m);
}

ConstructionLog random_balanced_family(const Params& p, std::uint64_t seed, std::size_t max_rounds,
                                       const Budget& budget) {
  ConstructionLog log;
  log.method = "random";
  log.seed = seed;
  log.family.provenance = Provenance::random_seeded;
  CoverageBitmap uncovered = all_sets(p, budget);
  SplitMix64 rng(seed);
  const auto u = static_cast<std::uint32_t>(p.u());
  const auto m = static_cast<std::uint32_t>(p.m());
  while (uncovered.any() && log.family.size() < max_rounds) {
    auto h = sample_balanced(u, m, rng);
    uncovered -= covers_of(h, p);
    log.family.functions.push_back(std::move(h));
    log.uncovered_per_round.push_back(uncovered.count());
  }
  if (uncovered.any()) {
    log.notes.push_back("stopped after " + std::to_string(max_rounds) + " rounds");
  }
  finish(log, p, budget);
  return log;
}

ConstructionLog greedy_cover(const Params& p, std::span<const HashFunction> pool,
                             const Budget& budget) {
  check_pool(p, pool, budget);
  ConstructionLog log;
  log.method = "greedy";
  log.pool_size = pool.size();
  log.family.provenance = Provenance::greedy;
  CoverageBitmap uncovered = all_sets(p, budget);

  std::vector<CoverageBitmap> covers;
  std::vector<std::vector<std::uint32_t>> signatures;
  covers.reserve(pool.size());
  for (const auto& h : pool) {
    covers.push_back(covers_of(h, p));
    signatures.push_back(h.fiber_signature());
  }

  while (uncovered.any()) {
    std::size_t best = pool.size();
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const std::size_t gain = (uncovered & covers[i]).count();
      if (gain == 0) {
        continue;
      }
      if (gain > best_gain || (gain == best_gain && signatures[i] < signatures[best])) {
        best = i;
        best_gain = gain;
      }
    }
    if (best == pool.size()) {
      log.notes.emplace_back("pool exhausted with sets uncovered");
      break;
    }
    uncovered -= covers[best];
    log.family.functions.push_back(pool[best]);
    log.uncovered_per_round.push_back(uncovered.count());
  }
  finish(log, p, budget);
  return log;
}

ConstructionLog yao_family(const Params& p, const Rational& t, std::span<const HashFunction> pool,
                           std::uint64_t load_target, const Budget& budget) {
  if (t <= 1) {
    throw DomainError("yao_family: requires t > 1");
  }
  const Rational alpha = p.alpha();
  if (Rational(load_target) < alpha) {
    throw DomainError("yao_family: requires load_target >= ceil(alpha)");
  }
  check_pool(p, pool, budget);
  const Params target = p.with_c(Rational(load_target) / alpha);

  ConstructionLog log;
  log.method = "yao";
  log.pool_size = pool.size();
  log.load_target = load_target;
  log.family.provenance = Provenance::yao;
  CoverageBitmap live = all_sets(target, budget);
  const BigCount total(live.size());
  const BigCount num = boost::multiprecision::numerator(t);
  const BigCount den = boost::multiprecision::denominator(t);

  std::vector<CoverageBitmap> covers;
  covers.reserve(pool.size());
  for (const auto& h : pool) {
    covers.push_back(covers_of(h, target));
  }

  while (live.any()) {
    const std::size_t live_count = live.count();
    std::size_t best = 0;
    std::size_t best_exceed = live_count + 1;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const std::size_t exceed = (live - covers[i]).count();
      if (exceed < best_exceed) {
        best = i;
        best_exceed = exceed;
      }
    }
    if (best_exceed == live_count) {
      log.notes.emplace_back("pool exhausted: no member handles any live set");
      break;
    }
    const Rational fraction(best_exceed, live_count);
    log.exceed_fractions.push_back(fraction);
    if (fraction * t > 1) {
      ++log.fallbacks;
      log.notes.push_back("round " + std::to_string(log.family.size() + 1) +
                          ": no member at or below 1/t, took exceed fraction " +
                          to_string(fraction));
    }
    live -= covers[best];
    log.family.functions.push_back(pool[best]);
    log.uncovered_per_round.push_back(live.count());
    // live <= C(u, n) t^-r  <=>  live * num^r <= C(u, n) * den^r
    const auto r = log.family.size();
    if (BigCount(live.count()) * power(num, r) > total * power(den, r)) {
      log.residual_bound_held = false;
      log.notes.push_back("round " + std::to_string(r) + ": residual above C(u, n) t^-r");
    }
  }
  finish(log, target, budget);
  return log;
}

}  // namespace cideal

#include "cideal/bounds.hpp"
#include "cideal/errors.hpp"
#include "cideal/construct.hpp"
#include "cideal/serialize.hpp"
#include "cideal/simulate.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>

using namespace cideal;

TEST_CASE("sampled balanced functions are balanced") {
  SplitMix64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto h = sample_balanced(11, 3, rng);
    CHECK(h.is_balanced());
    CHECK(h.u() == 11);
  }
}

TEST_CASE("balanced sampling hits every balanced function") {
  SplitMix64 rng(11);
  const auto all = balanced_functions(Params::make(4, 2, 2, 1));
  std::vector<int> hits(all.size(), 0);
  for (int i = 0; i < 6000; ++i) {
    const auto h = sample_balanced(4, 2, rng);
    const auto it = std::find(all.begin(), all.end(), h);
    REQUIRE(it != all.end());
    ++hits[static_cast<std::size_t>(it - all.begin())];
  }
  for (int h : hits) {
    CHECK(h > 850);
    CHECK(h < 1150);
  }
}

TEST_CASE("random balanced family") {
  const auto p = Params::make(4, 2, 2, 1);
  const auto loose = probability_upper(4, 2, 4).loose;
  CHECK(loose == 5);
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto log = random_balanced_family(p, seed, 64);
    CHECK(log.verified);
    CHECK(log.family.provenance == Provenance::random_seeded);
    within += log.verified && BigCount(log.family.size()) <= loose;
  }
  CHECK(within >= 19);

  const auto trivial = random_balanced_family(Params::make(6, 2, 3, 2), 3, 10);
  CHECK(trivial.verified);
  CHECK(trivial.family.size() == 1);

  const auto capped = random_balanced_family(Params::make(8, 2, 4, 1), 3, 1);
  CHECK_FALSE(capped.verified);
  CHECK(capped.witness.has_value());
}

TEST_CASE("random balanced family is reproducible") {
  const auto p = Params::make(8, 2, 4, 1);
  const auto a = to_json(random_balanced_family(p, 42, 100)).dump();
  const auto b = to_json(random_balanced_family(p, 42, 100)).dump();
  CHECK(a == b);
}

TEST_CASE("greedy cover") {
  const auto p = Params::make(4, 2, 2, 1);
  const auto pool = make_pool(p, PoolKind::balanced);
  const auto log = greedy_cover(p, pool);
  CHECK(log.verified);
  CHECK(log.family.size() == 2);
  CHECK(log.advice_bits() == 1);

  const std::vector<HashFunction> constant{HashFunction::constant(4, 2)};
  const auto bad = greedy_cover(p, constant);
  CHECK_FALSE(bad.verified);
  REQUIRE(bad.witness.has_value());
  CHECK(*bad.witness == KeySet({1, 2}, 4));
}

TEST_CASE("greedy beats the average balanced function each round") {
  for (unsigned u = 4; u <= 8; ++u) {
    for (unsigned n = 2; n <= 4 && n <= u; ++n) {
      const auto p = Params::make(u, 2, n, 1);
      const auto prob = exact_ideal_probability(p).probability();
      const auto pool = make_pool(p, PoolKind::balanced);
      const auto log = greedy_cover(p, pool);
      BigCount before = binom(u, n);
      for (auto after : log.uncovered_per_round) {
        CHECK(Rational(after) <= Rational(before) * (1 - prob));
        before = after;
      }
    }
  }
}

TEST_CASE("greedy no larger than the random median") {
  for (const auto& [u, m, n] : std::vector<std::array<unsigned, 3>>{{4, 2, 2}, {6, 2, 3}, {6, 3, 3}, {8, 2, 4}}) {
    const auto p = Params::make(u, m, n, 1);
    const auto pool = make_pool(p, PoolKind::balanced);
    const auto greedy = greedy_cover(p, pool).family.size();
    std::vector<std::size_t> sizes;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      sizes.push_back(random_balanced_family(p, seed, 500).family.size());
    }
    std::sort(sizes.begin(), sizes.end());
    CHECK(greedy <= sizes[sizes.size() / 2]);
  }
}

TEST_CASE("verified families respect the lower bounds") {
  for (unsigned u = 4; u <= 8; ++u) {
    for (unsigned n = 2; n <= 4 && n <= u; ++n) {
      const auto p = Params::make(u, 2, n, 1);
      const auto count = exact_ideal_probability(p);
      if (count.m_c == 0) {
        continue;  // no c-ideal family exists
      }
      const auto log = greedy_cover(p, make_pool(p, PoolKind::balanced));
      REQUIRE(log.verified);
      const auto size = static_cast<double>(log.family.size());
      CHECK(BigCount(log.family.size()) >= ceil_of(Rational(count.total, count.m_c)));
      CHECK(size >= *lower_universe(u, 2, n, 1) - 1e-12);
    }
  }
}

TEST_CASE("yao family") {
  const auto p = Params::make(8, 2, 4, 1);
  const auto pool = make_pool(p, PoolKind::balanced);
  const auto log = yao_family(p, 2, pool, 3);
  CHECK(log.verified);
  CHECK(log.rounds <= 7);
  CHECK(log.residual_bound_held);
  CHECK(log.load_target == std::optional<std::uint64_t>(3));
  Rational bound = 70;
  for (auto live : log.uncovered_per_round) {
    bound /= 2;
    CHECK(Rational(live) <= bound);
  }
  CHECK_THROWS(yao_family(p, 1, pool, 3));
  CHECK_THROWS(yao_family(p, 2, pool, 1));
}

TEST_CASE("pool budget") {
  Budget tiny;
  tiny.max_pool = 10;
  CHECK_THROWS_AS(make_pool(Params::make(8, 2, 4, 1), PoolKind::all, tiny), BudgetExceeded);
  CHECK(make_pool(Params::make(4, 2, 2, 1), PoolKind::all).size() == 16);
}

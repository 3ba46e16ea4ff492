#include "cideal/errors.hpp"
#include "cideal/simulate.hpp"

#include <doctest.h>

#include <cmath>

using namespace cideal;

TEST_CASE("splitmix64 reference outputs") {
  // First outputs for seed 1234567, from the published reference implementation.
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  CHECK(rng.next() == 9817491932198370423ULL);
}

TEST_CASE("splitmix64 uniform stays in range and splits are distinct") {
  SplitMix64 rng(9);
  for (int i = 0; i < 10000; ++i) {
    CHECK(rng.uniform(7) < 7);
  }
  auto a = SplitMix64(9).split(0);
  auto b = SplitMix64(9).split(1);
  auto a2 = SplitMix64(9).split(0);
  const auto x = a.next();
  CHECK(x != b.next());
  CHECK(x == a2.next());
}

TEST_CASE("floyd subsets are sorted, distinct and uniform") {
  SplitMix64 rng(3);
  std::vector<int> hits(6, 0);
  for (int i = 0; i < 60000; ++i) {
    const auto s = sample_subset(6, 2, rng);
    REQUIRE(s.size() == 2);
    CHECK(s[0] < s[1]);
    CHECK(s[1] <= 6);
    ++hits[s[0] - 1];
    ++hits[s[1] - 1];
  }
  for (int h : hits) {
    CHECK(std::abs(h - 20000) < 600);
  }
}

TEST_CASE("max load estimate") {
  const auto one = estimate_max_load(9, 1, 50, 4);
  CHECK(one.mean == 9.0);
  CHECK(one.ci95_halfwidth == 0.0);
  const auto a = estimate_max_load(100, 10, 500, 17);
  const auto b = estimate_max_load(100, 10, 500, 17);
  CHECK(a.mean == b.mean);
  CHECK(a.ci95_halfwidth == b.ci95_halfwidth);
  CHECK(a.mean != estimate_max_load(100, 10, 500, 18).mean);
  const auto par = estimate_max_load(100, 10, 500, 17, 3);
  CHECK(par.workers == 3);
  CHECK(par.mean == estimate_max_load(100, 10, 500, 17, 3).mean);
}

TEST_CASE("ideal probability estimate") {
  const auto e = estimate_ideal_probability(Params::make(8, 2, 4, 1), 100000, 1);
  const double exact = 36.0 / 70;
  const double sigma = std::sqrt(exact * (1 - exact) / 100000);
  CHECK(std::abs(e.mean - exact) <= 3 * sigma);
  const auto sure = estimate_ideal_probability(Params::make(8, 2, 4, 2), 100, 1);
  CHECK(sure.mean == 1.0);
  CHECK(sure.ci95_halfwidth == 0.0);
  const auto rare = estimate_ideal_probability(Params::make(30, 10, 10, 1), 200, 1);
  CHECK(rare.interval == "wilson");
  CHECK(rare.ci95_halfwidth > 0.0);
}

TEST_CASE("adversarial set") {
  const auto s = adversarial_set(HashFunction::blocked(16, 2), 4);
  CHECK(s == KeySet({1, 2, 3, 4}, 16));
  CHECK(load_profile(HashFunction::blocked(16, 2), s).max_load == 4);
  CHECK_THROWS_AS(adversarial_set(HashFunction({1, 2, 3, 4}, 4), 2), DomainError);
  for (std::uint32_t m = 2; m <= 4; ++m) {
    const std::uint32_t n = 4;
    const auto h = HashFunction::blocked(n * m, m);
    CHECK(load_profile(h, adversarial_set(h, n)).max_load == n);
  }
}

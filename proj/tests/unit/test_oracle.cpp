#include "cideal/oracle.hpp"
#include "naive.hpp"

#include <doctest.h>

using namespace cideal;

namespace {

HashFunction fn(std::vector<std::uint32_t> cells, std::uint32_t m) { return {std::move(cells), m}; }

void each_decomposition(unsigned left, unsigned parts, std::vector<unsigned>& acc,
                        const std::function<void(const std::vector<unsigned>&)>& visit) {
  if (parts == 1) {
    acc.push_back(left);
    visit(acc);
    acc.pop_back();
    return;
  }
  for (unsigned b = 0; b <= left; ++b) {
    acc.push_back(b);
    each_decomposition(left - b, parts - 1, acc, visit);
    acc.pop_back();
  }
}

}  // namespace

TEST_CASE("count ideal sets examples") {
  CHECK(count_ideal_sets({{4, 4}}, 4, 2) == 36);
  CHECK(count_ideal_sets({{2, 2}}, 2, 1) == 4);
  CHECK(count_ideal_sets({{3, 1}}, 2, 1) == 3);
  CHECK(count_ideal_sets({{3, 2, 2}}, 4, 4) == binom(7, 4));
  // balanced c = 1 closed form C(u/m, alpha)^m
  CHECK(count_ideal_sets({{4, 4, 4}}, 6, 2) == power(binom(4, 2), 3));
}

TEST_CASE("count ideal sets agrees with naive enumeration for u <= 10") {
  for (unsigned u = 2; u <= 10; ++u) {
    for (unsigned m = 2; m <= 3; ++m) {
      std::vector<unsigned> acc;
      each_decomposition(u, m, acc, [&](const std::vector<unsigned>& betas) {
        for (unsigned n = 1; n <= u; n += 2) {
          for (unsigned cap = 0; cap <= n; ++cap) {
            Decomposition d;
            d.betas.assign(betas.begin(), betas.end());
            CHECK(count_ideal_sets(d, n, cap) == naive::count_ideal(betas, n, cap));
          }
        }
      });
    }
  }
}

TEST_CASE("enumerated and DP counts agree") {
  for_each_function(7, 3, [&](const HashFunction& h) {
    CHECK(count_ideal_sets_enumerated(h, 4, 2) == count_ideal_sets(h.decomposition(), 4, 2));
    return true;
  });
}

TEST_CASE("exact ideal probability") {
  const auto a = exact_ideal_probability(Params::make(8, 2, 4, 1));
  CHECK(a.fraction_text() == "36/70");
  CHECK(a.probability() == Rational(18, 35));
  CHECK(exact_ideal_probability(Params::make(4, 2, 2, 1)).fraction_text() == "4/6");
  CHECK(exact_ideal_probability(Params::make(9, 3, 4, 3)).probability() == 1);
}

TEST_CASE("balanced decomposition maximises the count") {
  for (unsigned u = 4; u <= 10; ++u) {
    for (unsigned n = 2; n <= std::min(u, 6u); ++n) {
      const auto p = Params::make(u, 2, n, 1);
      const auto best = exact_ideal_probability(p).m_c;
      std::vector<unsigned> acc;
      each_decomposition(u, 2, acc, [&](const std::vector<unsigned>& betas) {
        CHECK(naive::count_ideal(betas, n, static_cast<unsigned>(p.cap())) <= best);
      });
    }
  }
}

TEST_CASE("M_c monotone in c and saturates") {
  const auto p = Params::make(10, 3, 6, 1);
  BigCount prev = 0;
  for (const Rational c : {Rational(1), Rational(7, 6), Rational(3, 2), Rational(2), Rational(3)}) {
    const auto now = exact_ideal_probability(p.with_c(c)).m_c;
    CHECK(now >= prev);
    prev = now;
  }
  CHECK(prev == binom(10, 6));
}

TEST_CASE("balance extremality examples") {
  const auto a = balance_extremality_check(8, 2, 4, 1);
  CHECK(a.holds);
  CHECK_FALSE(a.degenerate_tie);
  CHECK(a.best == 36);
  CHECK(a.argmax.size() == 1);
  CHECK(a.decompositions == 5);
  for (const auto& d : sorted_decompositions(8, 2)) {
    if (!d.is_balanced()) {
      CHECK(count_ideal_sets(d, 4, 2) < 36);
    }
  }
  CHECK(balance_extremality_check(6, 3, 3, 1).holds);
  const auto tie = balance_extremality_check(4, 2, 2, 2);
  CHECK(tie.holds);
  CHECK(tie.degenerate_tie);
}

TEST_CASE("balance ties when no fiber can exceed the cap") {
  // cap 3 < n 4, yet (3,1) hashes the only 4-set within the cap just like (2,2).
  const auto check = balance_extremality_check(4, 2, 4, Rational(3, 2));
  CHECK(check.degenerate_tie);
  CHECK(check.holds);
  CHECK(check.argmax.size() == 2);
}

TEST_CASE("verify family") {
  const auto p = Params::make(4, 2, 2, 1);
  Family pair{{fn({1, 1, 2, 2}, 2), fn({1, 2, 1, 2}, 2)}};
  const auto ok = verify_family(pair, p);
  CHECK(ok.is_ideal_family);
  CHECK(ok.covered == 6);
  CHECK_FALSE(ok.uncovered_witness.has_value());

  Family single{{fn({1, 1, 2, 2}, 2)}};
  const auto bad = verify_family(single, p);
  CHECK_FALSE(bad.is_ideal_family);
  REQUIRE(bad.uncovered_witness.has_value());
  CHECK(*bad.uncovered_witness == KeySet({1, 2}, 4));

  Family constant{{HashFunction::constant(4, 2)}};
  CHECK(verify_family(constant, Params::make(4, 2, 2, 2)).is_ideal_family);
  CHECK_THROWS(verify_family(Family{}, p));
}

TEST_CASE("minimal family size") {
  const auto r = min_family_size_exact(Params::make(4, 2, 2, 1), 4);
  REQUIRE(r.size.has_value());
  CHECK(*r.size == 2);
  REQUIRE(r.family.has_value());
  CHECK(verify_family(*r.family, Params::make(4, 2, 2, 1)).is_ideal_family);

  for (unsigned u = 2; u <= 6; ++u) {
    for (unsigned m = 1; m <= 3; ++m) {
      for (unsigned n = std::max(m, 1u); n <= u; ++n) {
        const auto one = min_family_size_exact(Params::make(u, m, n, m), 3);
        CHECK(one.size == std::optional<std::size_t>(1));
      }
    }
  }
  CHECK(min_family_size_exact(Params::make(5, 1, 3, 1), 2).size == std::optional<std::size_t>(1));
  CHECK(min_family_size_exact(Params::make(8, 2, 4, 1), 5).size == std::optional<std::size_t>(3));
}

TEST_CASE("volume bound never exceeds exact H_c") {
  for (unsigned u = 3; u <= 7; ++u) {
    for (unsigned m = 2; m <= 3; ++m) {
      for (unsigned n = m; n <= std::min(u, 5u); ++n) {
        for (const Rational c : {Rational(1), Rational(3, 2)}) {
          const auto p = Params::make(u, m, n, c);
          const auto count = exact_ideal_probability(p);
          if (count.m_c == 0) {
            continue;
          }
          const auto r = min_family_size_exact(p, 8);
          REQUIRE(r.size.has_value());
          CHECK(BigCount(*r.size) >= ceil_of(Rational(count.total, count.m_c)));
        }
      }
    }
  }
}

#include "cideal/bounds.hpp"
#include "cideal/errors.hpp"
#include "cideal/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cideal;

namespace {

// Independent evaluations of the closed forms, in long double.
long double lower_main_ref(long double m, long double alpha, long double c) {
  const long double k = c * alpha + 1;
  return std::exp(m * std::exp(-alpha) * std::pow(alpha / k, k));
}

long double upper_main_ref(long double u, long double n, long double m, long double c) {
  const long double alpha = n / m;
  const long double pi = std::numbers::pi_v<long double>;
  const long double base = std::pow(std::sqrt(2 * pi * c * alpha), 1 / c) * std::pow(c, alpha) *
                           std::exp(1 / (12 * c * c * alpha)) / std::pow(alpha + 1, 1 - 1 / c);
  return std::pow(base, m) * std::sqrt(n / (2 * pi)) * std::log(u);
}

}  // namespace

TEST_CASE("lower main") {
  const auto v = lower_main(10, 1, 1, 0);
  CHECK(v.log() == doctest::Approx(10 * std::exp(-1.0) / 4).epsilon(1e-12));
  CHECK(v.value() == doctest::Approx(2.5086).epsilon(1e-4));
  CHECK(v.value() == doctest::Approx(static_cast<double>(lower_main_ref(10, 1, 1))));
  double prev = 0.0;
  for (std::uint64_t m = 2; m <= 40; ++m) {
    const double now = lower_main(m, Rational(3, 2), 2, 0).log();
    CHECK(now > prev);
    prev = now;
  }
  const auto with_eps = lower_main(10, 1, 1, Rational(1, 10));
  CHECK(with_eps.log() ==
        doctest::Approx(std::log(0.9) + 10 * std::exp(-1.0) * 0.9 / 4).epsilon(1e-12));
}

TEST_CASE("lower universe") {
  CHECK(lower_universe(4, 2, 2, 1).value() == doctest::Approx(2.0));
  CHECK(lower_universe(BigCount(1) << 16, 16, 16, 1).value() == doctest::Approx(4.0));
  CHECK_FALSE(lower_universe(4, 2, 4, 2).has_value());
  CHECK_FALSE(lower_universe(100, 1, 4, 1).has_value());
  // c >= m: one function already handles every set
  CHECK_FALSE(lower_universe(5, 2, 2, 2).has_value());
}

TEST_CASE("upper main") {
  const auto v = upper_main(16, 2, 2, 1);
  CHECK(v.value() == doctest::Approx(11.6).epsilon(0.01));
  CHECK(std::ceil(v.value()) == 12);
  CHECK(v.value() == doctest::Approx(static_cast<double>(upper_main_ref(16, 2, 2, 1))));
  CHECK(upper_main(1000, 12, 4, Rational(3, 2)).value() ==
        doctest::Approx(static_cast<double>(upper_main_ref(1000, 12, 4, 1.5L))));
}

TEST_CASE("upper main equals the Naor form at c = 1") {
  for (std::uint64_t m = 2; m <= 50; ++m) {
    for (std::uint64_t alpha = 1; alpha <= 8; ++alpha) {
      const BigCount u = BigCount(1) << 64;
      const double a = upper_main(u, alpha * m, m, 1).log();
      const double b = naor_upper(u, alpha * m, m).log();
      CHECK(std::abs(a - b) <= 1e-9 * std::abs(b));
    }
  }
}

TEST_CASE("upper main dominates lower main") {
  for (std::uint64_t m = 2; m <= 20; ++m) {
    for (std::uint64_t alpha = 1; alpha <= 4; ++alpha) {
      for (const Rational c : {Rational(1), Rational(3, 2), Rational(2), Rational(3)}) {
        const auto hi = upper_main(BigCount(1) << 40, alpha * m, m, c);
        const auto lo = lower_main(m, Rational(alpha), c, 0);
        CHECK(hi.log() >= lo.log());
      }
    }
  }
}

TEST_CASE("upper main rate") {
  const double rate = upper_main_rate(1, 1);
  CHECK(rate == doctest::Approx(0.5 * std::log(2 * std::numbers::pi) + 1.0 / 12).epsilon(1e-12));
  CHECK(rate > 1.002);
}

TEST_CASE("upper yao") {
  CHECK(upper_yao(8, 4, 2) == 7);
  CHECK(upper_yao(8, 4, 70) == 2);
  // least r with 70 t^-r < 1
  for (const Rational t : {Rational(3, 2), Rational(2), Rational(5), Rational(71)}) {
    const auto r = upper_yao(8, 4, t);
    CHECK(Rational(70) < power(t, r.convert_to<std::uint64_t>()));
    CHECK(Rational(70) >= power(t, r.convert_to<std::uint64_t>() - 1));
  }
  CHECK_THROWS_AS(upper_yao(8, 4, 1), DomainError);
}

TEST_CASE("probability upper") {
  const auto a = probability_upper(4, 2, 4);
  CHECK(a.p == Rational(2, 3));
  CHECK(a.tight == 2);
  CHECK(a.loose == 5);
  CHECK(probability_upper(8, 4, 70).tight == 1);
  CHECK_THROWS_AS(probability_upper(4, 2, 0), DomainError);
  for (unsigned u = 4; u <= 12; ++u) {
    for (unsigned m = 2; m <= 3; ++m) {
      for (unsigned n = m; n <= u; ++n) {
        const auto count = exact_ideal_probability(Params::make(u, m, n, Rational(3, 2)));
        if (count.m_c == 0) {
          continue;
        }
        const auto b = probability_upper(u, n, count.m_c);
        CHECK(b.loose >= b.tight);
      }
    }
  }
}

TEST_CASE("comparison bounds") {
  const auto report = bound_report(BoundParams::make(8, 2, 4, 1));
  const auto& exact = report.at("lower.mehlhorn.exact");
  CHECK(exact.valid);
  CHECK(exact.value.value() == doctest::Approx(70.0 / 36));
  CHECK_FALSE(report.at("lower.fk").valid);
  CHECK_FALSE(report.at("upper.fk").valid);
  const auto square = bound_report(BoundParams::make(1 << 20, 8, 8, 1));
  CHECK(square.at("lower.fk").valid);
  CHECK(square.at("lower.fk").asymptotic);
}

TEST_CASE("bound report vocabulary") {
  const auto r = bound_report(BoundParams::make(256, 8, 16, Rational(3, 2)));
  for (const char* name : {"lower.volume", "lower.main", "lower.universe", "lower.fk",
                           "lower.mehlhorn", "upper.prob.tight", "upper.prob.loose", "upper.main",
                           "upper.naor", "upper.yao"}) {
    CHECK(r.find(name) != nullptr);
  }
  CHECK_THROWS_AS((void)r.at("nope"), std::out_of_range);
  REQUIRE(r.m_c.has_value());
  CHECK(r.sets == binom(256, 16));
}

TEST_CASE("valid non-asymptotic lower bounds never exceed valid upper bounds") {
  for (std::uint64_t u : {16, 64, 1024}) {
    for (std::uint64_t m = 2; m <= 4; ++m) {
      for (std::uint64_t n = m; n <= 3 * m; ++n) {
        for (const Rational c : {Rational(1), Rational(3, 2), Rational(2)}) {
          const auto r = bound_report(BoundParams::make(u, m, n, c));
          for (const auto& lo : r.entries) {
            for (const auto& hi : r.entries) {
              if (lo.kind == BoundKind::lower && hi.kind == BoundKind::upper && lo.valid &&
                  hi.valid && !lo.asymptotic && !hi.asymptotic) {
                INFO(lo.name << " vs " << hi.name << " at u=" << u << " m=" << m << " n=" << n);
                CHECK(lo.value.log() <= hi.value.log() + 1e-9);
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("no ideal set flags every bound") {
  const auto r = bound_report(BoundParams::make(12, 2, 3, 1));
  REQUIRE(r.m_c.has_value());
  CHECK(*r.m_c == 0);
  CHECK_FALSE(r.at("upper.prob.tight").valid);
  CHECK_FALSE(r.at("lower.volume").valid);
}

TEST_CASE("advice report") {
  SUBCASE("easy lower bound in nats") {
    const auto r = bound_report(BoundParams::make(BigCount(1) << 256, 1 << 16, 1 << 16, 1));
    const auto a = advice_report(r);
    REQUIRE(a.lower_easy.has_value());
    CHECK(*a.lower_easy == doctest::Approx(std::log(256 * std::log(2.0)) -
                                           std::log(16 * std::log(2.0))));
    CHECK(*a.lower_easy == doctest::Approx(2.77).epsilon(0.01));
    CHECK(*a.lower_easy_bits == doctest::Approx(4.0));
  }
  SUBCASE("advice values are log2 of the bound entries") {
    for (std::uint64_t m = 3; m <= 12; ++m) {
      const auto r = bound_report(BoundParams::make(BigCount(1) << 40, m, 2 * m, 2));
      const auto a = advice_report(r);
      const auto bits = [](const BoundEntry& e) { return std::max(0.0, e.value.log2()); };
      REQUIRE(a.lower_main.has_value());
      CHECK(*a.lower_main == bits(r.at("lower.main")));
      if (r.at("upper.main").valid) {
        CHECK(*a.upper_main == bits(r.at("upper.main")));
      }
      if (r.at("upper.yao").valid) {
        CHECK(*a.upper_yao == bits(r.at("upper.yao")));
      }
    }
  }
  SUBCASE("lower main bits grow linearly in m") {
    std::vector<double> v;
    for (std::uint64_t m = 10; m <= 40; m += 10) {
      v.push_back(*advice_report(bound_report(BoundParams::make(BigCount(1) << 40, m, m, 1)))
                       .lower_main);
    }
    for (std::size_t i = 2; i < v.size(); ++i) {
      CHECK((v[i] - v[i - 1]) == doctest::Approx(v[i - 1] - v[i - 2]).epsilon(1e-6));
    }
  }
  SUBCASE("c >= m collapses the upper bounds") {
    const auto a = advice_report(bound_report(BoundParams::make(64, 2, 4, 2)));
    CHECK(a.upper_main == 0.0);
    CHECK(a.upper_yao == 0.0);
  }
  SUBCASE("lower bounds stay below upper bounds") {
    const auto a = advice_report(bound_report(BoundParams::make(1 << 20, 4, 8, 2)));
    if (a.lower_easy_bits && a.upper_main) {
      CHECK(*a.lower_easy_bits <= *a.upper_main);
    }
  }
}

TEST_CASE("bound evaluation is deterministic") {
  const auto p = BoundParams::make(BigCount(1) << 100, 12, 30, Rational(5, 4));
  const auto a = bound_report(p);
  const auto b = bound_report(p);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].value.log() == b.entries[i].value.log());
  }
}

TEST_CASE("bound parameter validation") {
  CHECK_THROWS(BoundParams::make(8, 0, 4, 1));
  CHECK_THROWS(BoundParams::make(8, 2, 4, Rational(1, 2)));
  CHECK_THROWS(BoundParams::make(8, 2, 4, 1, 1));
  CHECK_THROWS(BoundParams::make(8, 2, 4, 1, 0, 1));
}

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "cideal/bounds.hpp"
#include "cideal/construct.hpp"
#include "cideal/distributions.hpp"
#include "cideal/lemmas.hpp"
#include "cideal/oracle.hpp"
#include "cideal/simulate.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#ifndef CIDEAL_TOOL_PATH
#error "CIDEAL_TOOL_PATH must name the cideal executable"
#endif

using namespace cideal;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      detail = what;
    }
    pass = pass && ok;
  }
};

std::string inst(std::uint64_t u, std::uint64_t m, std::uint64_t n, const Rational& c) {
  std::ostringstream s;
  s << "u=" << u << " m=" << m << " n=" << n << " c=" << to_string(c);
  return s.str();
}

const std::vector<Rational> kCs{Rational(1), Rational(3, 2), Rational(2)};

// Every (u, m, n, c) with u <= max_u, m in {2, 3}, m <= n <= min(u, max_n).
void for_each_tiny(std::uint64_t max_u, std::uint64_t max_n,
                   const std::function<void(const Params&)>& visit) {
  for (std::uint64_t u = 2; u <= max_u; ++u) {
    for (std::uint64_t m = 2; m <= 3; ++m) {
      for (std::uint64_t n = m; n <= std::min(u, max_n); ++n) {
        for (const auto& c : kCs) {
          visit(Params::make(u, m, n, c));
        }
      }
    }
  }
}

Outcome from_checks(const std::vector<LemmaCheck>& checks) {
  Outcome o;
  for (const auto& c : checks) {
    o.require(c.pass, c.lemma + " " + c.instance + ": " + c.lhs + " " + c.relation + " " + c.rhs);
  }
  o.detail = o.pass ? std::to_string(checks.size()) + " checks" : o.detail;
  return o;
}

Outcome criterion1() { return from_checks(check_poissonization()); }

Outcome criterion2() { return from_checks(check_balance()); }

Outcome criterion3() {
  auto checks = check_negative_dependence();
  for (auto& extra : {check_replacement(), check_tmax_sandwich()}) {
    checks.insert(checks.end(), extra.begin(), extra.end());
  }
  return from_checks(checks);
}

Outcome criterion4() { return from_checks(check_non_excess()); }

Outcome criterion5() {
  Outcome o;
  const auto p = Params::make(4, 2, 2, 1);
  const auto exact = min_family_size_exact(p, 4);
  o.require(exact.size == std::optional<std::size_t>(2), "H_1(4,2,2) != 2");
  const auto universe = lower_universe(4, 2, 2, 1);
  o.require(universe && *universe == 2.0, "universe bound != 2");
  const auto tight = probability_upper(4, 2, exact_ideal_probability(p).m_c).tight;
  o.require(tight == 2, "tight probability bound != 2");
  std::size_t instances = 0;
  for (std::uint64_t u = 1; u <= 6; ++u) {
    for (std::uint64_t m = 1; m <= u; ++m) {
      for (std::uint64_t n = m; n <= u; ++n) {
        for (std::uint64_t c = m; c <= m + 1; ++c) {
          const auto q = Params::make(u, m, n, c);
          o.require(min_family_size_exact(q, 2).size == std::optional<std::size_t>(1),
                    "H_c != 1 at " + inst(u, m, n, c));
          ++instances;
        }
      }
    }
  }
  if (o.pass) {
    o.detail = "H_1=2=universe=tight; H_c=1 on " + std::to_string(instances) + " c>=m instances";
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t audited = 0;
  for_each_tiny(8, 5, [&](const Params& p) {
    const auto report = bound_report(BoundParams::from(p));
    if (!report.m_c || *report.m_c == 0) {
      return;  // no c-ideal family exists
    }
    const auto& tight = report.at("upper.prob.tight");
    const auto& volume = report.at("lower.volume");
    const auto& universe = report.at("lower.universe");
    const auto limit = tight.integer->convert_to<std::size_t>();
    const auto exact = min_family_size_exact(p, limit);
    const auto where = inst(p.u(), p.m(), p.n(), p.c());
    if (!exact.size) {
      o.require(false, "no family within the tight bound at " + where);
      return;
    }
    const BigCount h = *exact.size;
    o.require(*volume.integer <= h, "lower.volume > H_c at " + where);
    if (universe.valid) {
      o.require(*universe.integer <= h, "lower.universe > H_c at " + where);
      o.require(universe.value.log() <= std::log(static_cast<double>(*exact.size)) + 1e-12,
                "lower.universe value > H_c at " + where);
    }
    o.require(h <= *tight.integer, "H_c > upper.prob.tight at " + where);
    ++audited;
  });
  if (o.pass) {
    o.detail = std::to_string(audited) + " instances";
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::size_t greedy_count = 0;
  for_each_tiny(6, 6, [&](const Params& p) {
    if (exact_ideal_probability(p).m_c == 0) {
      return;
    }
    const auto pool = make_pool(p, PoolKind::balanced);
    const auto log = greedy_cover(p, pool);
    const auto exact = min_family_size_exact(p, 8);
    const auto where = inst(p.u(), p.m(), p.n(), p.c());
    o.require(log.verified, "greedy unverified at " + where);
    o.require(exact.size && log.family.size() == *exact.size,
              "greedy " + std::to_string(log.family.size()) + " != H_c " +
                  (exact.size ? std::to_string(*exact.size) : "?") + " at " + where);
    ++greedy_count;
  });

  std::size_t yao_count = 0;
  for (const auto& [u, m, n] : std::vector<std::array<std::uint64_t, 3>>{
           {8, 2, 4}, {9, 3, 3}, {10, 2, 4}, {12, 3, 6}, {12, 2, 6}}) {
    for (const Rational t : {Rational(3, 2), Rational(2), Rational(3)}) {
      const auto p = Params::make(u, m, n, 1);
      Budget budget;
      budget.max_pool = 100'000;
      const auto pool = make_pool(p, PoolKind::balanced, budget);
      const auto target = ceil_of(p.alpha()).convert_to<std::uint64_t>() + 1;
      const auto log = yao_family(p, t, pool, target, budget);
      const auto where = inst(u, m, n, 1) + " t=" + to_string(t);
      const auto rounds = upper_yao(u, n, t);
      o.require(log.verified, "yao unverified at " + where);
      o.require(BigCount(log.rounds) <= rounds, "yao rounds over bound at " + where);
      Rational bound(binom(u, n));
      for (auto live : log.uncovered_per_round) {
        bound /= t;
        o.require(Rational(live) <= bound, "yao residual over C(u,n)/t^r at " + where);
      }
      ++yao_count;
    }
  }

  std::size_t random_count = 0;
  for (const auto& [u, m, n] : std::vector<std::array<std::uint64_t, 3>>{
           {4, 2, 2}, {6, 2, 4}, {6, 3, 3}, {8, 2, 4}, {9, 3, 3}}) {
    const auto p = Params::make(u, m, n, 1);
    const auto count = exact_ideal_probability(p);
    const auto loose = probability_upper(u, n, count.m_c).loose;
    int within = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto log = random_balanced_family(p, seed, loose.convert_to<std::size_t>());
      within += log.verified && BigCount(log.family.size()) <= loose;
    }
    o.require(within >= 19, "random verified within the loose bound on " +
                                std::to_string(within) + "/20 seeds at " + inst(u, m, n, 1));
    ++random_count;
  }
  if (o.pass) {
    o.detail = "greedy " + std::to_string(greedy_count) + ", yao " + std::to_string(yao_count) +
               ", random " + std::to_string(random_count) + " instances";
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto e = estimate_ideal_probability(Params::make(8, 2, 4, 1), 100000, 1);
  const double p = 36.0 / 70;
  const double sigma = std::sqrt(p * (1 - p) / 100000);
  o.require(std::abs(e.mean - p) <= 3 * sigma, "estimate " + std::to_string(e.mean) +
                                                   " outside 3 sigma of 36/70");
  double lo = 1e9;
  double hi = 0.0;
  for (std::uint64_t m = 1 << 6; m <= (1 << 14); m <<= 1) {
    const auto est = estimate_max_load(m, m, 2000, m);
    const double lm = std::log(static_cast<double>(m));
    const double ratio = est.mean / (lm / std::log(lm));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    o.require(ratio >= 0.5 && ratio <= 3.0,
              "max-load ratio " + std::to_string(ratio) + " at m=" + std::to_string(m));
  }
  if (o.pass) {
    std::ostringstream s;
    s << "estimate " << e.mean << " vs " << p << "; ratio band [" << lo << ", " << hi << "]";
    o.detail = s.str();
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t m = 2; m <= 50; ++m) {
    for (std::uint64_t alpha = 1; alpha <= 8; ++alpha) {
      const auto bp = BoundParams::make(BigCount(1) << 64, m, alpha * m, 1);
      const auto report = bound_report(bp);
      const double a = report.at("upper.main").value.log();
      const double b = report.at("upper.naor").value.log();
      const double rel = std::abs(a - b) / std::abs(b);
      worst = std::max(worst, rel);
      o.require(rel <= 1e-9, "upper.main vs upper.naor at m=" + std::to_string(m));

      const auto advice = advice_report(report);
      const auto bits = [](const BoundEntry& e) -> std::optional<double> {
        if (!e.valid) {
          return std::nullopt;
        }
        return std::max(0.0, e.value.log2());
      };
      o.require(advice.lower_main == bits(report.at("lower.main")), "advice.lower_main");
      o.require(advice.lower_easy_bits == bits(report.at("lower.universe")), "advice.lower_easy_bits");
      if (bp.c < Rational(bp.m)) {
        o.require(advice.upper_main == bits(report.at("upper.main")), "advice.upper_main");
        o.require(advice.upper_yao == bits(report.at("upper.yao")), "advice.upper_yao");
      }
    }
  }
  if (o.pass) {
    std::ostringstream s;
    s << "max relative log gap " << worst;
    o.detail = s.str();
  }
  return o;
}

std::string capture(const std::string& command) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) {
    return "<popen failed>";
  }
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe.get())) > 0) {
    out.append(buffer.data(), got);
  }
  return out;
}

Outcome criterion10() {
  Outcome o;
  const std::string tool = CIDEAL_TOOL_PATH;
  const std::vector<std::string> commands{
      "simulate --u 64 --m 4 --n 8 --c 3/2 --trials 20000 --seed 7 --workers 3",
      "simulate --u 1000 --m 10 --n 10 --trials 5000 --seed 3",
      "construct --method random --u 8 --m 2 --n 4 --c 1 --seed 11",
      "construct --method greedy --u 6 --m 3 --n 3 --c 1",
      "construct --method yao --u 8 --m 2 --n 4 --c 1 --t 2 --load-target 3",
      "bounds --u 2^256 --m 65536 --n 65536 --c 1",
      "report --u 16,32 --m 2 --n 2:4 --c 1,3/2",
      "exact --u 6 --m 2 --n 3 --c 1 --hc",
  };
  for (const auto& args : commands) {
    const auto first = capture(tool + " " + args + " 2>&1");
    const auto second = capture(tool + " " + args + " 2>&1");
    o.require(!first.empty() && first == second, "output differs: " + args);
  }
  if (o.pass) {
    o.detail = std::to_string(commands.size()) + " commands byte-identical";
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria{
      {1, "poissonization identity", 10, criterion1},
      {2, "balance theorem", 60, criterion2},
      {3, "negative dependence and replacement", 60, criterion3},
      {4, "non-excess lower bound", 10, criterion4},
      {5, "exact H_c anchor", 30, criterion5},
      {6, "sandwich audit", 120, criterion6},
      {7, "constructors", 120, criterion7},
      {8, "monte carlo consistency", 120, criterion8},
      {9, "bound evaluators", 5, criterion9},
      {10, "determinism", 120, criterion10},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_s) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget)";
    }
    std::printf("%s %2d %-38s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds,
                o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}

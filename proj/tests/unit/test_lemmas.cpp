#include "cideal/lemmas.hpp"

#include <doctest.h>

using namespace cideal;

TEST_CASE("every lemma family passes on the default grid") {
  const auto checks = check_all_lemmas();
  for (const auto& c : checks) {
    INFO(c.lemma << " " << c.instance << ": " << c.lhs << " " << c.relation << " " << c.rhs);
    CHECK(c.pass);
  }
  CHECK(all_pass(checks));
}

TEST_CASE("each lemma family is non-empty") {
  CHECK_FALSE(check_poissonization().empty());
  CHECK_FALSE(check_negative_dependence().empty());
  CHECK_FALSE(check_replacement().empty());
  CHECK_FALSE(check_tmax_sandwich().empty());
  CHECK(check_non_excess().size() == 4 * 3 * 2);
  CHECK_FALSE(check_balance().empty());
  CHECK_FALSE(check_min_product().empty());
  CHECK(check_composition_floor().size() == 5 * 4 * 2);
}

TEST_CASE("a failing comparison is reported") {
  LemmaGrid grid;
  grid.log_tolerance = -1.0;  // demands a gap of one nat that is not there
  const auto checks = check_non_excess(grid);
  CHECK_FALSE(all_pass(checks));
}

TEST_CASE("degenerate balance ties are labelled") {
  LemmaGrid grid;
  grid.balance_m = {2};
  grid.balance_max_u = 4;
  grid.balance_max_n = 4;
  grid.balance_c = {Rational(3, 2)};
  bool saw_tie = false;
  for (const auto& c : check_balance(grid)) {
    CHECK(c.pass);
    saw_tie = saw_tie || c.lemma == "balance.degenerate-tie";
  }
  CHECK(saw_tie);
}

#pragma once

// Exhaustive ground truth for tiny instances: M_c counts, exact ideality
// probabilities, family verification and exact minimal family sizes.

#include "cideal/hashspace.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cideal {

/// Bit r corresponds to the n-subset of lexicographic rank r.
using CoverageBitmap = boost::dynamic_bitset<std::uint64_t>;

/// Sets hashed with every cell load <= cap, as a bitmap over lexicographic ranks.
/// Pruned depth-first walk; requires C(u, n) to fit in memory.
CoverageBitmap coverage_bitmap(const HashFunction& h, std::uint32_t n, std::uint32_t cap);

struct IdealCount {
  BigCount m_c;
  BigCount total;

  [[nodiscard]] Rational probability() const { return Rational(m_c, total); }
  /// "m_c/total" without reduction, e.g. "36/70".
  [[nodiscard]] std::string fraction_text() const { return m_c.str() + "/" + total.str(); }
};

/// Sum over (l_1..l_m), l_i <= cap, sum n, of prod C(beta_i, l_i); coefficient
/// of x^n in the product of the capped per-cell polynomials.
BigCount count_ideal_sets(const Decomposition& d, std::uint64_t n, std::uint64_t cap);

/// Same quantity by visiting every n-subset (independent route).
BigCount count_ideal_sets_enumerated(const HashFunction& h, std::uint32_t n, std::uint32_t cap,
                                     const Budget& budget = {});

/// M_c and C(u, n) for the balanced decomposition of p.
IdealCount exact_ideal_probability(const Params& p);

struct BalanceCheck {
  bool holds = false;
  /// Every decomposition attains the same count (cap >= n, or no set can be
  /// hashed within the cap at all); only "balanced is a maximiser" is asserted.
  bool degenerate_tie = false;
  BigCount best;
  std::vector<Decomposition> argmax;  // sorted non-increasing representatives
  std::size_t decompositions = 0;
};

/// Compares the balanced decomposition against every other split of u into m
/// parts (non-increasing representatives; the count is order-free).
BalanceCheck balance_extremality_check(std::uint64_t u, std::uint64_t m, std::uint64_t n,
                                       const Rational& c, const Budget& budget = {});

/// All non-increasing decompositions of u into m non-negative parts.
std::vector<Decomposition> sorted_decompositions(std::uint64_t u, std::uint64_t m,
                                                 const Budget& budget = {});

struct CoverageReport {
  BigCount covered;
  BigCount total;
  std::optional<KeySet> uncovered_witness;  // lexicographically first
  bool is_ideal_family = false;
};

CoverageReport verify_family(const Family& f, const Params& p, const Budget& budget = {});

struct MinFamilyResult {
  std::optional<std::size_t> size;
  std::optional<Family> family;
  std::size_t pool_size = 0;     // canonical candidates
  std::size_t reduced_pool = 0;  // after dropping dominated coverage
  std::uint64_t nodes = 0;
};

/// Smallest c-ideal family among canonical functions, up to `size_limit`
/// members. Exact; exponential in the worst case.
MinFamilyResult min_family_size_exact(const Params& p, std::size_t size_limit,
                                      const Budget& budget = {});

}  // namespace cideal

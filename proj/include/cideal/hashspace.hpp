#pragma once

// Universes, hash functions, key sets and cell loads.
//
// Keys and cells are 1-based: a hash function over a universe of size u into m
// cells stores u entries, each in [1, m]; a key set is a strictly increasing
// sequence of keys in [1, u].

#include "cideal/combinatorics.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cideal {

/// Enumeration limits for exhaustive searches.
struct Budget {
  std::uint64_t max_sets = 1'000'000;  // C(u, n)
  std::uint64_t max_pool = 10'000;     // candidate hash functions
};

/// Problem parameters (u, m, n, c) with exact load factor alpha = n / m.
class Params {
 public:
  /// Requires 1 <= m <= n <= u and c >= 1. With `strict`, also u >= n^2.
  static Params make(std::uint64_t u, std::uint64_t m, std::uint64_t n, Rational c,
                     bool strict = false);

  [[nodiscard]] std::uint64_t u() const { return u_; }
  [[nodiscard]] std::uint64_t m() const { return m_; }
  [[nodiscard]] std::uint64_t n() const { return n_; }
  [[nodiscard]] const Rational& c() const { return c_; }
  [[nodiscard]] Rational alpha() const { return Rational(n_, m_); }
  [[nodiscard]] Rational threshold() const { return c_ * alpha(); }
  /// floor(c * alpha): the largest integer load that is still c-ideal.
  [[nodiscard]] std::uint64_t cap() const { return cap_; }
  [[nodiscard]] bool cap_binds() const { return cap_ < n_; }
  [[nodiscard]] double alpha_real() const;
  [[nodiscard]] double c_real() const;

  [[nodiscard]] Params with_c(Rational c) const;

 private:
  Params(std::uint64_t u, std::uint64_t m, std::uint64_t n, Rational c);

  std::uint64_t u_;
  std::uint64_t m_;
  std::uint64_t n_;
  Rational c_;
  std::uint64_t cap_;
};

/// Fiber sizes (beta_1..beta_m) of a hash function.
struct Decomposition {
  std::vector<std::uint64_t> betas;

  static Decomposition balanced(std::uint64_t u, std::uint64_t m);

  [[nodiscard]] std::uint64_t total() const;
  [[nodiscard]] bool is_balanced() const;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

class HashFunction {
 public:
  /// `cells[i]` is the cell of key i + 1; every entry must lie in [1, m].
  HashFunction(std::vector<std::uint32_t> cells, std::uint32_t m);

  /// Keys 1..ceil(u/m) to cell 1, the next block to cell 2, ...
  static HashFunction blocked(std::uint32_t u, std::uint32_t m);
  static HashFunction constant(std::uint32_t u, std::uint32_t m, std::uint32_t cell = 1);

  [[nodiscard]] std::uint32_t u() const { return static_cast<std::uint32_t>(cells_.size()); }
  [[nodiscard]] std::uint32_t m() const { return m_; }
  [[nodiscard]] std::uint32_t operator()(std::uint32_t key) const { return cells_[key - 1]; }
  [[nodiscard]] std::span<const std::uint32_t> cells() const { return cells_; }

  [[nodiscard]] Decomposition decomposition() const;
  [[nodiscard]] bool is_balanced() const;
  /// Cells relabelled in order of first appearance; equal for functions that
  /// induce the same partition of the universe.
  [[nodiscard]] std::vector<std::uint32_t> fiber_signature() const;
  /// Keys of each cell, ascending; index i holds cell i + 1.
  [[nodiscard]] std::vector<std::vector<std::uint32_t>> fibers() const;

  friend bool operator==(const HashFunction&, const HashFunction&) = default;
  friend auto operator<=>(const HashFunction& a, const HashFunction& b) {
    return a.cells_ <=> b.cells_;
  }

 private:
  std::vector<std::uint32_t> cells_;
  std::uint32_t m_;
};

class KeySet {
 public:
  /// Keys are sorted; duplicates or keys outside [1, u] are rejected.
  KeySet(std::vector<std::uint32_t> keys, std::uint32_t u);

  [[nodiscard]] std::uint32_t universe() const { return u_; }
  [[nodiscard]] std::size_t size() const { return keys_.size(); }
  [[nodiscard]] std::span<const std::uint32_t> keys() const { return keys_; }

  friend bool operator==(const KeySet&, const KeySet&) = default;

 private:
  std::vector<std::uint32_t> keys_;
  std::uint32_t u_;
};

struct LoadProfile {
  std::vector<std::uint32_t> loads;
  std::uint32_t max_load = 0;
};

enum class Provenance { random_seeded, greedy, yao, explicit_list };

std::string_view to_string(Provenance p);

struct Family {
  std::vector<HashFunction> functions;
  Provenance provenance = Provenance::explicit_list;

  [[nodiscard]] std::size_t size() const { return functions.size(); }
};

LoadProfile load_profile(const HashFunction& h, const KeySet& s);

/// max load <= c * n / m, compared exactly.
bool is_c_ideal(const HashFunction& h, const KeySet& s, const Params& p);

/// Throws DimensionMismatch unless h was built for p's universe and table.
void require_compatible(const HashFunction& h, const Params& p);

/// max over the given sets of min over f of the maximum cell load.
std::uint32_t family_cost(const Family& f, std::span<const KeySet> sets);
/// Same, over every n-subset of [u]; throws BudgetExceeded when C(u, n) > budget.
std::uint32_t family_cost(const Family& f, const Params& p, const Budget& budget = {});

/// Throws BudgetExceeded when C(u, n) exceeds `budget.max_sets`.
std::uint64_t require_enumerable(std::uint64_t u, std::uint64_t n, const Budget& budget);

/// Visits every n-subset of [u] in lexicographic order; the callback receives
/// the sorted keys. Returning false stops the walk.
void for_each_key_set(std::uint32_t u, std::uint32_t n,
                      const std::function<bool(std::span<const std::uint32_t>)>& visit);

/// Position of s in the lexicographic order of n-subsets (combinatorial number system).
std::uint64_t rank_key_set(std::span<const std::uint32_t> sorted_keys, std::uint32_t u);
KeySet unrank_key_set(std::uint64_t rank, std::uint32_t u, std::uint32_t n);

/// Every balanced function of (u, m), in lexicographic order of cell sequences.
class BalancedFunctionEnumerator {
 public:
  BalancedFunctionEnumerator(std::uint32_t u, std::uint32_t m);
  std::optional<HashFunction> next();

 private:
  bool fits(std::uint32_t cell) const;
  void place(std::size_t pos, std::uint32_t cell);
  void unplace(std::size_t pos);
  bool complete_from(std::size_t pos);

  std::uint32_t u_;
  std::uint32_t m_;
  std::uint32_t floor_;
  std::uint32_t ceil_;
  std::uint32_t ceil_cells_;
  std::vector<std::uint32_t> cells_;
  std::vector<std::uint32_t> counts_;
  std::uint32_t at_ceil_ = 0;
  bool started_ = false;
  bool done_ = false;
};

std::vector<HashFunction> balanced_functions(const Params& p, const Budget& budget = {});

/// One representative per partition of [u] into at most m fibers
/// (restricted growth strings), in lexicographic order.
std::vector<HashFunction> canonical_functions(std::uint32_t u, std::uint32_t m,
                                              const Budget& budget = {});

/// Number of partitions of [u] into at most m non-empty blocks.
BigCount canonical_function_count(std::uint32_t u, std::uint32_t m);

/// Visits all m^u functions; returning false stops.
void for_each_function(std::uint32_t u, std::uint32_t m,
                       const std::function<bool(const HashFunction&)>& visit);

}  // namespace cideal

#pragma once

// Constructions of c-ideal families, each re-verified by the exhaustive oracle.

#include "cideal/hashspace.hpp"
#include "cideal/oracle.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cideal {

class SplitMix64;

struct ConstructionLog {
  std::string method;  // "random", "greedy" or "yao"
  std::optional<std::uint64_t> seed;
  std::size_t rounds = 0;
  std::size_t pool_size = 0;
  /// Sets not yet covered after each round.
  std::vector<std::uint64_t> uncovered_per_round;
  Family family;
  /// Set by an independent oracle pass over the final family.
  bool verified = false;
  std::optional<KeySet> witness;
  std::vector<std::string> notes;

  // yao only
  std::optional<std::uint64_t> load_target;
  std::vector<Rational> exceed_fractions;  // per round, over the live sets
  std::size_t fallbacks = 0;               // rounds with no member at or below 1/t
  bool residual_bound_held = true;         // live <= C(u, n) t^-r after every round

  /// ceil(log2 |family|): advice bits needed to name a member.
  [[nodiscard]] std::uint64_t advice_bits() const;
};

enum class PoolKind { balanced, all };

/// Balanced functions, or all m^u functions; throws BudgetExceeded beyond budget.max_pool.
std::vector<HashFunction> make_pool(const Params& p, PoolKind kind, const Budget& budget = {});

/// Uniform balanced function: a random arrangement of the fiber sizes over the
/// cells, then a Fisher-Yates shuffle of the keys cut into fibers of those sizes.
HashFunction sample_balanced(std::uint32_t u, std::uint32_t m, SplitMix64& rng);

/// Samples balanced functions with replacement until every set is covered or
/// max_rounds functions were drawn.
ConstructionLog random_balanced_family(const Params& p, std::uint64_t seed, std::size_t max_rounds,
                                       const Budget& budget = {});

/// Repeatedly takes the pool member covering most uncovered sets; ties go to
/// the smaller fiber signature, then to pool order.
ConstructionLog greedy_cover(const Params& p, std::span<const HashFunction> pool,
                             const Budget& budget = {});

/// Each round takes the member with the fewest live sets loaded above
/// load_target (first in pool order on ties) and drops the sets it handles.
/// Requires t > 1 and load_target >= ceil(alpha); the family is verified at
/// c = load_target / alpha.
ConstructionLog yao_family(const Params& p, const Rational& t, std::span<const HashFunction> pool,
                           std::uint64_t load_target, const Budget& budget = {});

}  // namespace cideal

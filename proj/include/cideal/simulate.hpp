#pragma once

// Monte Carlo estimates at sizes beyond exhaustive enumeration.

#include "cideal/hashspace.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cideal {

/// SplitMix64 (Steele, Lea, Flood 2014). State advances by the golden-ratio
/// increment; outputs go through the variant-13 finalizer. Portable and
/// bit-identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, bound), by rejection; bound > 0.
  std::uint64_t uniform(std::uint64_t bound);
  /// Independent child stream: seeded with mix(seed ^ mix(index + 1)) where
  /// seed is this generator's original seed.
  [[nodiscard]] SplitMix64 split(std::uint64_t index) const;

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t state_;
  std::uint64_t origin_ = state_;
};

struct Estimate {
  double mean = 0.0;
  double ci95_halfwidth = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string interval = "normal";  // or "wilson"
};

/// Mean and normal 95% interval of the max load of n uniform throws into m cells.
Estimate estimate_max_load(std::uint64_t n, std::uint64_t m, std::uint64_t trials,
                           std::uint64_t seed, unsigned workers = 1);

/// Fraction of uniform n-subsets of [u] that HashFunction::blocked(u, m) hashes
/// c-ideally. Wilson interval when successes < 10.
Estimate estimate_ideal_probability(const Params& p, std::uint64_t trials, std::uint64_t seed,
                                    unsigned workers = 1);

/// Uniform n-subset of [u] by Floyd's algorithm, sorted.
std::vector<std::uint32_t> sample_subset(std::uint32_t u, std::uint32_t n, SplitMix64& rng);

/// n keys of the largest fiber of h (smallest cell on ties); every key lands in
/// one cell. Throws DomainError when no fiber holds n keys.
KeySet adversarial_set(const HashFunction& h, std::uint32_t n);

}  // namespace cideal

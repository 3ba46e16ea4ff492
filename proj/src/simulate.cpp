#include "cideal/simulate.hpp"

#include "cideal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_set>

namespace cideal {

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

std::uint64_t SplitMix64::uniform(std::uint64_t bound) {
  // Reject the low 2^64 mod bound values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) {
      return r % bound;
    }
  }
}

SplitMix64 SplitMix64::split(std::uint64_t index) const {
  return SplitMix64(mix(origin_ ^ mix(index + 1)));
}

namespace {

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
};

// Splits trials over workers with per-worker streams; the result depends only
// on (seed, trials, workers).
template <typename Trial>
Moments run_workers(std::uint64_t trials, std::uint64_t seed, unsigned workers, Trial trial) {
  workers = std::max(1u, workers);
  const SplitMix64 root(seed);
  std::vector<Moments> parts(workers);
  const auto work = [&](unsigned w) {
    SplitMix64 rng = root.split(w);
    const std::uint64_t share = trials / workers + (w < trials % workers ? 1 : 0);
    Moments& m = parts[w];
    for (std::uint64_t i = 0; i < share; ++i) {
      const double x = trial(rng);
      m.sum += x;
      m.sum_sq += x * x;
      ++m.count;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back(work, w);
    }
    for (auto& t : threads) {
      t.join();
    }
  }
  Moments total;
  for (const auto& m : parts) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
    total.count += m.count;
  }
  return total;
}

constexpr double kZ95 = 1.959963984540054;

}  // namespace

Estimate estimate_max_load(std::uint64_t n, std::uint64_t m, std::uint64_t trials,
                           std::uint64_t seed, unsigned workers) {
  if (trials < 1 || m < 1) {
    throw DomainError("estimate_max_load: requires trials >= 1 and m >= 1");
  }
  const auto moments = run_workers(trials, seed, workers, [n, m](SplitMix64& rng) {
    std::vector<std::uint32_t> loads(m, 0);
    std::uint32_t peak = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      peak = std::max(peak, ++loads[m == 1 ? 0 : rng.uniform(m)]);
    }
    return static_cast<double>(peak);
  });
  Estimate e;
  e.trials = trials;
  e.seed = seed;
  e.workers = std::max(1u, workers);
  const double count = static_cast<double>(moments.count);
  e.mean = moments.sum / count;
  if (moments.count > 1) {
    const double variance =
        std::max(0.0, (moments.sum_sq - count * e.mean * e.mean) / (count - 1.0));
    e.ci95_halfwidth = kZ95 * std::sqrt(variance / count);
  }
  return e;
}

Estimate estimate_ideal_probability(const Params& p, std::uint64_t trials, std::uint64_t seed,
                                    unsigned workers) {
  if (trials < 1) {
    throw DomainError("estimate_ideal_probability: requires trials >= 1");
  }
  const auto u = static_cast<std::uint32_t>(p.u());
  const auto n = static_cast<std::uint32_t>(p.n());
  const auto h = HashFunction::blocked(u, static_cast<std::uint32_t>(p.m()));
  const auto cap = p.cap();
  const auto moments = run_workers(trials, seed, workers, [&](SplitMix64& rng) {
    std::vector<std::uint32_t> loads(h.m() + 1, 0);
    for (auto key : sample_subset(u, n, rng)) {
      if (++loads[h(key)] > cap) {
        return 0.0;
      }
    }
    return 1.0;
  });
  Estimate e;
  e.trials = trials;
  e.seed = seed;
  e.workers = std::max(1u, workers);
  const double count = static_cast<double>(moments.count);
  const double phat = moments.sum / count;
  e.mean = phat;
  if (moments.sum < 10.0) {
    // Wilson score interval; reported as the larger distance from phat.
    e.interval = "wilson";
    const double z2 = kZ95 * kZ95;
    const double centre = (phat + z2 / (2.0 * count)) / (1.0 + z2 / count);
    const double spread =
        kZ95 * std::sqrt(phat * (1.0 - phat) / count + z2 / (4.0 * count * count)) /
        (1.0 + z2 / count);
    e.ci95_halfwidth = std::max(phat - (centre - spread), (centre + spread) - phat);
  } else {
    e.ci95_halfwidth = kZ95 * std::sqrt(phat * (1.0 - phat) / count);
  }
  return e;
}

std::vector<std::uint32_t> sample_subset(std::uint32_t u, std::uint32_t n, SplitMix64& rng) {
  if (n > u) {
    throw DomainError("sample_subset: requires n <= u");
  }
  std::vector<std::uint32_t> chosen;
  chosen.reserve(n);
  std::unordered_set<std::uint32_t> seen;
  for (std::uint32_t j = u - n + 1; j <= u; ++j) {
    const auto t = static_cast<std::uint32_t>(rng.uniform(j)) + 1;
    const auto pick = seen.contains(t) ? j : t;
    seen.insert(pick);
    chosen.push_back(pick);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

KeySet adversarial_set(const HashFunction& h, std::uint32_t n) {
  const auto fibers = h.fibers();
  std::size_t best = 0;
  for (std::size_t i = 1; i < fibers.size(); ++i) {
    if (fibers[i].size() > fibers[best].size()) {
      best = i;
    }
  }
  if (fibers.empty() || fibers[best].size() < n) {
    throw DomainError("adversarial_set: no fiber holds " + std::to_string(n) + " keys");
  }
  return KeySet(std::vector<std::uint32_t>(fibers[best].begin(), fibers[best].begin() + n), h.u());
}

}  // namespace cideal

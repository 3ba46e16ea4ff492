#include "cideal/hashspace.hpp"

#include "cideal/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace cideal {

// ---------------------------------------------------------------- Params

Params::Params(std::uint64_t u, std::uint64_t m, std::uint64_t n, Rational c)
    : u_(u), m_(m), n_(n), c_(std::move(c)) {
  cap_ = floor_of(threshold()).convert_to<std::uint64_t>();
}

Params Params::make(std::uint64_t u, std::uint64_t m, std::uint64_t n, Rational c,
                    bool strict) {
  if (m < 1) {
    throw DomainError("Params: m must be >= 1");
  }
  if (n < m) {
    throw DomainError("Params: n must be >= m (n=" + std::to_string(n) +
                      ", m=" + std::to_string(m) + ")");
  }
  if (n > u) {
    throw DomainError("Params: n must be <= u");
  }
  if (c < 1) {
    throw DomainError("Params: c must be >= 1");
  }
  if (u > std::numeric_limits<std::uint32_t>::max()) {
    throw DomainError("Params: u must fit in 32 bits");
  }
  if (strict && u / n < n) {
    throw DomainError("Params: strict mode requires u >= n^2");
  }
  return Params(u, m, n, std::move(c));
}

double Params::alpha_real() const { return static_cast<double>(n_) / static_cast<double>(m_); }

double Params::c_real() const { return c_.convert_to<double>(); }

Params Params::with_c(Rational c) const { return make(u_, m_, n_, std::move(c)); }

// --------------------------------------------------------- Decomposition

Decomposition Decomposition::balanced(std::uint64_t u, std::uint64_t m) {
  Decomposition d;
  d.betas.assign(m, u / m);
  for (std::uint64_t i = 0; i < u % m; ++i) {
    ++d.betas[i];
  }
  return d;
}

std::uint64_t Decomposition::total() const {
  return std::accumulate(betas.begin(), betas.end(), std::uint64_t{0});
}

bool Decomposition::is_balanced() const {
  if (betas.empty()) {
    return true;
  }
  const auto [lo, hi] = std::minmax_element(betas.begin(), betas.end());
  return *hi - *lo <= 1;
}

// ---------------------------------------------------------- HashFunction

HashFunction::HashFunction(std::vector<std::uint32_t> cells, std::uint32_t m)
    : cells_(std::move(cells)), m_(m) {
  if (m_ == 0) {
    throw DomainError("HashFunction: m must be >= 1");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] < 1 || cells_[i] > m_) {
      throw DomainError("HashFunction: key " + std::to_string(i + 1) + " maps to cell " +
                        std::to_string(cells_[i]) + " outside [1, " + std::to_string(m_) + "]");
    }
  }
}

HashFunction HashFunction::blocked(std::uint32_t u, std::uint32_t m) {
  const auto sizes = Decomposition::balanced(u, m).betas;
  std::vector<std::uint32_t> cells;
  cells.reserve(u);
  for (std::uint32_t cell = 0; cell < m; ++cell) {
    cells.insert(cells.end(), sizes[cell], cell + 1);
  }
  return HashFunction(std::move(cells), m);
}

HashFunction HashFunction::constant(std::uint32_t u, std::uint32_t m, std::uint32_t cell) {
  return HashFunction(std::vector<std::uint32_t>(u, cell), m);
}

Decomposition HashFunction::decomposition() const {
  Decomposition d;
  d.betas.assign(m_, 0);
  for (auto cell : cells_) {
    ++d.betas[cell - 1];
  }
  return d;
}

bool HashFunction::is_balanced() const { return decomposition().is_balanced(); }

std::vector<std::uint32_t> HashFunction::fiber_signature() const {
  std::vector<std::uint32_t> relabel(m_ + 1, 0);
  std::uint32_t next = 0;
  std::vector<std::uint32_t> out;
  out.reserve(cells_.size());
  for (auto cell : cells_) {
    if (relabel[cell] == 0) {
      relabel[cell] = ++next;
    }
    out.push_back(relabel[cell]);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> HashFunction::fibers() const {
  std::vector<std::vector<std::uint32_t>> out(m_);
  for (std::uint32_t key = 1; key <= u(); ++key) {
    out[cells_[key - 1] - 1].push_back(key);
  }
  return out;
}

// ---------------------------------------------------------------- KeySet

KeySet::KeySet(std::vector<std::uint32_t> keys, std::uint32_t u) : keys_(std::move(keys)), u_(u) {
  std::sort(keys_.begin(), keys_.end());
  if (std::adjacent_find(keys_.begin(), keys_.end()) != keys_.end()) {
    throw DomainError("KeySet: duplicate key");
  }
  if (!keys_.empty() && (keys_.front() < 1 || keys_.back() > u_)) {
    throw DomainError("KeySet: key outside [1, " + std::to_string(u_) + "]");
  }
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::random_seeded: return "random-seeded";
    case Provenance::greedy: return "greedy";
    case Provenance::yao: return "yao";
    case Provenance::explicit_list: return "explicit";
  }
  return "explicit";
}

// ----------------------------------------------------------------- loads

LoadProfile load_profile(const HashFunction& h, const KeySet& s) {
  if (s.universe() != h.u()) {
    throw DimensionMismatch("load_profile: key set universe " + std::to_string(s.universe()) +
                            " != hash function universe " + std::to_string(h.u()));
  }
  LoadProfile profile;
  profile.loads.assign(h.m(), 0);
  for (auto key : s.keys()) {
    const auto load = ++profile.loads[h(key) - 1];
    profile.max_load = std::max(profile.max_load, load);
  }
  return profile;
}

void require_compatible(const HashFunction& h, const Params& p) {
  if (h.u() != p.u() || h.m() != p.m()) {
    throw DimensionMismatch("hash function is over (u=" + std::to_string(h.u()) +
                            ", m=" + std::to_string(h.m()) + "), parameters are (u=" +
                            std::to_string(p.u()) + ", m=" + std::to_string(p.m()) + ")");
  }
}

bool is_c_ideal(const HashFunction& h, const KeySet& s, const Params& p) {
  require_compatible(h, p);
  if (s.size() != p.n()) {
    throw DimensionMismatch("is_c_ideal: key set has " + std::to_string(s.size()) +
                            " keys, expected n=" + std::to_string(p.n()));
  }
  const auto profile = load_profile(h, s);
  return Rational(profile.max_load) <= p.threshold();
}

std::uint64_t require_enumerable(std::uint64_t u, std::uint64_t n, const Budget& budget) {
  const BigCount total = binom(u, n);
  if (total > budget.max_sets) {
    throw BudgetExceeded("C(" + std::to_string(u) + ", " + std::to_string(n) + ") = " +
                         total.str() + " key sets exceeds the enumeration budget of " +
                         std::to_string(budget.max_sets));
  }
  return total.convert_to<std::uint64_t>();
}

namespace {

std::uint32_t min_cost(const Family& f, std::span<const std::uint32_t> keys,
                       std::vector<std::uint32_t>& loads) {
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  for (const auto& h : f.functions) {
    std::fill(loads.begin(), loads.end(), 0);
    std::uint32_t worst = 0;
    for (auto key : keys) {
      worst = std::max(worst, ++loads[h(key) - 1]);
    }
    best = std::min(best, worst);
  }
  return best;
}

void require_nonempty_uniform(const Family& f) {
  if (f.functions.empty()) {
    throw DomainError("family is empty");
  }
  for (const auto& h : f.functions) {
    if (h.u() != f.functions.front().u() || h.m() != f.functions.front().m()) {
      throw DimensionMismatch("family members disagree on (u, m)");
    }
  }
}

}  // namespace

std::uint32_t family_cost(const Family& f, std::span<const KeySet> sets) {
  require_nonempty_uniform(f);
  std::vector<std::uint32_t> loads(f.functions.front().m());
  std::uint32_t cost = 0;
  for (const auto& s : sets) {
    if (s.universe() != f.functions.front().u()) {
      throw DimensionMismatch("family_cost: key set universe mismatch");
    }
    cost = std::max(cost, min_cost(f, s.keys(), loads));
  }
  return cost;
}

std::uint32_t family_cost(const Family& f, const Params& p, const Budget& budget) {
  require_nonempty_uniform(f);
  require_compatible(f.functions.front(), p);
  require_enumerable(p.u(), p.n(), budget);
  std::vector<std::uint32_t> loads(p.m());
  std::uint32_t cost = 0;
  for_each_key_set(static_cast<std::uint32_t>(p.u()), static_cast<std::uint32_t>(p.n()),
                   [&](std::span<const std::uint32_t> keys) {
                     cost = std::max(cost, min_cost(f, keys, loads));
                     return true;
                   });
  return cost;
}

// ----------------------------------------------------- key set traversal

void for_each_key_set(std::uint32_t u, std::uint32_t n,
                      const std::function<bool(std::span<const std::uint32_t>)>& visit) {
  if (n > u) {
    return;
  }
  std::vector<std::uint32_t> keys(n);
  std::iota(keys.begin(), keys.end(), 1U);
  while (true) {
    if (!visit(keys)) {
      return;
    }
    // Rightmost position that can still advance.
    std::int64_t i = static_cast<std::int64_t>(n) - 1;
    while (i >= 0 && keys[i] == u - n + static_cast<std::uint32_t>(i) + 1) {
      --i;
    }
    if (i < 0) {
      return;
    }
    ++keys[i];
    for (auto j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
      keys[j] = keys[j - 1] + 1;
    }
  }
}

std::uint64_t rank_key_set(std::span<const std::uint32_t> sorted_keys, std::uint32_t u) {
  const auto n = static_cast<std::uint32_t>(sorted_keys.size());
  BigCount rank = 0;
  std::uint32_t prev = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t y = prev + 1; y < sorted_keys[i]; ++y) {
      rank += binom(u - y, n - i - 1);
    }
    prev = sorted_keys[i];
  }
  return rank.convert_to<std::uint64_t>();
}

KeySet unrank_key_set(std::uint64_t rank, std::uint32_t u, std::uint32_t n) {
  if (binom(u, n) <= rank) {
    throw DomainError("unrank_key_set: rank out of range");
  }
  std::vector<std::uint32_t> keys;
  keys.reserve(n);
  BigCount remaining = rank;
  std::uint32_t y = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    while (true) {
      const BigCount block = binom(u - y, n - i - 1);
      if (remaining < block) {
        break;
      }
      remaining -= block;
      ++y;
    }
    keys.push_back(y);
    ++y;
  }
  return KeySet(std::move(keys), u);
}

// ---------------------------------------------------- balanced functions

BalancedFunctionEnumerator::BalancedFunctionEnumerator(std::uint32_t u, std::uint32_t m)
    : u_(u),
      m_(m),
      floor_(m == 0 ? 0 : u / m),
      ceil_(m == 0 ? 0 : (u + m - 1) / m),
      ceil_cells_(m == 0 ? 0 : u % m),
      cells_(u, 0),
      counts_(m + 1, 0) {
  if (m == 0) {
    throw DomainError("BalancedFunctionEnumerator: m must be >= 1");
  }
}

// A partial assignment extends to a balanced function iff no cell exceeds
// ceil(u/m) and at most (u mod m) cells exceed floor(u/m).
bool BalancedFunctionEnumerator::fits(std::uint32_t cell) const {
  if (counts_[cell] < floor_) {
    return true;
  }
  return counts_[cell] == floor_ && ceil_ > floor_ && at_ceil_ < ceil_cells_;
}

void BalancedFunctionEnumerator::place(std::size_t pos, std::uint32_t cell) {
  cells_[pos] = cell;
  if (++counts_[cell] == ceil_ && ceil_ > floor_) {
    ++at_ceil_;
  }
}

void BalancedFunctionEnumerator::unplace(std::size_t pos) {
  const auto cell = cells_[pos];
  if (counts_[cell]-- == ceil_ && ceil_ > floor_) {
    --at_ceil_;
  }
  cells_[pos] = 0;
}

bool BalancedFunctionEnumerator::complete_from(std::size_t pos) {
  for (std::size_t i = pos; i < u_; ++i) {
    std::uint32_t cell = 1;
    while (cell <= m_ && !fits(cell)) {
      ++cell;
    }
    if (cell > m_) {
      return false;
    }
    place(i, cell);
  }
  return true;
}

std::optional<HashFunction> BalancedFunctionEnumerator::next() {
  if (done_) {
    return std::nullopt;
  }
  if (!started_) {
    started_ = true;
    if (!complete_from(0)) {
      done_ = true;
      return std::nullopt;
    }
    return HashFunction(cells_, m_);
  }
  for (std::size_t pos = u_; pos-- > 0;) {
    const auto current = cells_[pos];
    unplace(pos);
    for (std::uint32_t cell = current + 1; cell <= m_; ++cell) {
      if (fits(cell)) {
        place(pos, cell);
        if (complete_from(pos + 1)) {
          return HashFunction(cells_, m_);
        }
      }
    }
  }
  done_ = true;
  return std::nullopt;
}

std::vector<HashFunction> balanced_functions(const Params& p, const Budget& budget) {
  BalancedFunctionEnumerator it(static_cast<std::uint32_t>(p.u()),
                                static_cast<std::uint32_t>(p.m()));
  std::vector<HashFunction> out;
  while (auto h = it.next()) {
    if (out.size() >= budget.max_pool) {
      throw BudgetExceeded("balanced function pool exceeds budget of " +
                           std::to_string(budget.max_pool));
    }
    out.push_back(std::move(*h));
  }
  return out;
}

// --------------------------------------------------- canonical functions

BigCount canonical_function_count(std::uint32_t u, std::uint32_t m) {
  // stirling[k] = S(i, k) for the current i.
  std::vector<BigCount> stirling(m + 1, BigCount(0));
  stirling[0] = 1;
  for (std::uint32_t i = 1; i <= u; ++i) {
    for (std::uint32_t k = std::min(i, m); k >= 1; --k) {
      stirling[k] = BigCount(k) * stirling[k] + stirling[k - 1];
    }
    stirling[0] = 0;
  }
  BigCount total = 0;
  for (std::uint32_t k = 1; k <= m; ++k) {
    total += stirling[k];
  }
  return u == 0 ? BigCount(1) : total;
}

std::vector<HashFunction> canonical_functions(std::uint32_t u, std::uint32_t m,
                                              const Budget& budget) {
  const BigCount count = canonical_function_count(u, m);
  if (count > budget.max_pool) {
    throw BudgetExceeded(count.str() + " canonical functions exceed the pool budget of " +
                         std::to_string(budget.max_pool));
  }
  std::vector<HashFunction> out;
  out.reserve(count.convert_to<std::size_t>());
  std::vector<std::uint32_t> cells(u, 1);
  std::vector<std::uint32_t> prefix_max(u + 1, 0);
  // Iterative restricted-growth-string walk.
  const std::function<void(std::uint32_t)> extend = [&](std::uint32_t pos) {
    if (pos == u) {
      out.emplace_back(cells, m);
      return;
    }
    const std::uint32_t limit = std::min(m, prefix_max[pos] + 1);
    for (std::uint32_t cell = 1; cell <= limit; ++cell) {
      cells[pos] = cell;
      prefix_max[pos + 1] = std::max(prefix_max[pos], cell);
      extend(pos + 1);
    }
  };
  extend(0);
  return out;
}

void for_each_function(std::uint32_t u, std::uint32_t m,
                       const std::function<bool(const HashFunction&)>& visit) {
  std::vector<std::uint32_t> cells(u, 1);
  while (true) {
    if (!visit(HashFunction(cells, m))) {
      return;
    }
    std::size_t i = 0;
    while (i < u && cells[i] == m) {
      cells[i] = 1;
      ++i;
    }
    if (i == u) {
      return;
    }
    ++cells[i];
  }
}

}  // namespace cideal

#pragma once

#include <stdexcept>
#include <string>

namespace cideal {

/// Input outside an operation's mathematical domain (k = 0 for Stirling, t <= 1, ...).
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Two objects built for different (u, m, n) were combined.
struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// An exhaustive enumeration would exceed its configured budget.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cideal

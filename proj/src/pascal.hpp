#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace cideal::detail {

// Saturating Pascal triangle, C(a, b) for a <= rows, b <= cols.
class PascalTable {
 public:
  PascalTable(std::uint32_t rows, std::uint32_t cols)
      : cols_(cols + 1), table_((rows + 1) * (cols + 1), 0) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    for (std::uint32_t a = 0; a <= rows; ++a) {
      at(a, 0) = 1;
      for (std::uint32_t b = 1; b <= cols && b <= a; ++b) {
        const auto x = at(a - 1, b - 1);
        const auto y = at(a - 1, b);
        at(a, b) = x > kMax - y ? kMax : x + y;
      }
    }
  }

  [[nodiscard]] std::uint64_t operator()(std::uint32_t a, std::uint32_t b) const {
    return table_[a * cols_ + b];
  }

 private:
  std::uint64_t& at(std::uint32_t a, std::uint32_t b) { return table_[a * cols_ + b]; }

  std::size_t cols_;
  std::vector<std::uint64_t> table_;
};

}  // namespace cideal::detail

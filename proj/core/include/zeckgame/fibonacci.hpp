#pragma once

#include <cstdint>
#include <vector>

namespace zeck {

using Fib = std::uint64_t;

// Fibonacci numbers with the Zeckendorf indexing F_1 = 1, F_2 = 2,
// F_{i+1} = F_i + F_{i-1}. Indices are 1-based throughout the library.
class FibTable {
 public:
  // Table covering indices 1..ell(n)+1. Throws InvalidArgument for n == 0.
  explicit FibTable(std::uint32_t n);

  std::uint32_t n() const noexcept { return n_; }

  // Largest index with F_ell <= n.
  int ell() const noexcept { return ell_; }

  // Number of stored entries (ell + 1).
  int size() const noexcept { return static_cast<int>(values_.size()); }

  // F_index for 1 <= index <= size().
  Fib value(int index) const;

  const std::vector<Fib>& values() const noexcept { return values_; }

 private:
  std::uint32_t n_;
  int ell_ = 0;
  std::vector<Fib> values_;
};

FibTable fib_table(std::uint32_t n);

// F_index computed directly from the recurrence; index >= 1, index <= 90.
Fib fibonacci(int index);

// Index of the largest Fibonacci number <= n.
int ell_of(std::uint32_t n);

// The unique representation of n as distinct, non-adjacent Fibonacci numbers.
struct Decomposition {
  std::vector<int> indices;  // strictly increasing, gaps >= 2

  std::size_t z() const noexcept { return indices.size(); }
};

// Greedy construction. Throws InvalidArgument for n == 0.
Decomposition zeckendorf(std::uint32_t n);

}  // namespace zeck

#include "zeckgame/fibonacci.hpp"

#include <algorithm>
#include <string>

#include "zeckgame/errors.hpp"

namespace zeck {

FibTable::FibTable(std::uint32_t n) : n_(n) {
  if (n == 0) throw InvalidArgument("n must be positive");
  values_ = {1, 2};
  while (values_.back() <= n) {
    const auto k = values_.size();
    values_.push_back(values_[k - 1] + values_[k - 2]);
  }
  // values_.back() is the first entry above n.
  ell_ = static_cast<int>(values_.size()) - 1;
  values_.resize(static_cast<std::size_t>(ell_) + 1);
}

Fib FibTable::value(int index) const {
  if (index < 1 || index > size()) {
    throw InvalidArgument("Fibonacci index " + std::to_string(index) +
                          " outside table");
  }
  return values_[static_cast<std::size_t>(index) - 1];
}

FibTable fib_table(std::uint32_t n) { return FibTable(n); }

Fib fibonacci(int index) {
  if (index < 1 || index > 90) {
    throw InvalidArgument("Fibonacci index out of range");
  }
  Fib prev = 1;
  Fib cur = 1;  // F_0 = 1 under this indexing keeps F_1=1, F_2=2
  for (int i = 1; i <= index; ++i) {
    const Fib next = prev + cur;
    prev = cur;
    cur = next;
  }
  return prev;
}

int ell_of(std::uint32_t n) { return FibTable(n).ell(); }

Decomposition zeckendorf(std::uint32_t n) {
  const FibTable table(n);
  Decomposition d;
  Fib remainder = n;
  for (int i = table.ell(); i >= 1 && remainder > 0; --i) {
    if (table.value(i) <= remainder) {
      remainder -= table.value(i);
      d.indices.push_back(i);
      --i;  // the next term cannot be adjacent
    }
  }
  std::reverse(d.indices.begin(), d.indices.end());
  return d;
}

}  // namespace zeck

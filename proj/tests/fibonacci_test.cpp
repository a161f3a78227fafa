#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zeckgame/errors.hpp"
#include "zeckgame/fibonacci.hpp"

namespace zeck {
namespace {

TEST(FibTable, SingleGame) {
  const FibTable t(1);
  EXPECT_EQ(t.ell(), 1);
  EXPECT_EQ(t.values(), (std::vector<Fib>{1, 2}));
}

TEST(FibTable, EllMatchesRecurrence) {
  EXPECT_EQ(FibTable(10).ell(), 5);
  EXPECT_EQ(FibTable(10).value(5), 8u);
  EXPECT_EQ(FibTable(10).value(6), 13u);
  EXPECT_EQ(FibTable(100).ell(), 10);
  EXPECT_EQ(FibTable(100).value(10), 89u);
  EXPECT_EQ(FibTable(100).value(11), 144u);
}

TEST(FibTable, InvariantsHoldForManyN) {
  for (std::uint32_t n = 1; n <= 5000; n += 7) {
    const FibTable t(n);
    ASSERT_EQ(t.size(), t.ell() + 1);
    EXPECT_EQ(t.value(1), 1u);
    EXPECT_EQ(t.value(2), 2u);
    for (int i = 3; i <= t.size(); ++i) {
      EXPECT_EQ(t.value(i), t.value(i - 1) + t.value(i - 2));
    }
    EXPECT_LE(t.value(t.ell()), n);
    EXPECT_GT(t.value(t.ell() + 1), n);
  }
}

TEST(FibTable, RejectsZero) {
  EXPECT_THROW(FibTable(0), InvalidArgument);
  EXPECT_THROW(fib_table(0), InvalidArgument);
}

TEST(FibTable, OutOfRangeIndex) {
  const FibTable t(10);
  EXPECT_THROW((void)t.value(0), InvalidArgument);
  EXPECT_THROW((void)t.value(7), InvalidArgument);
}

TEST(Fibonacci, DirectFormula) {
  const auto f = oracle::fibs_up_to(1'000'000'000ULL);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(fibonacci(static_cast<int>(i) + 1), f[i]);
  }
}

TEST(Zeckendorf, KnownDecompositions) {
  EXPECT_EQ(zeckendorf(1).indices, (std::vector<int>{1}));
  EXPECT_EQ(zeckendorf(1).z(), 1u);
  EXPECT_EQ(zeckendorf(4).indices, (std::vector<int>{1, 3}));
  EXPECT_EQ(zeckendorf(4).z(), 2u);
  // 100 = 89 + 8 + 3
  EXPECT_EQ(zeckendorf(100).indices, (std::vector<int>{3, 5, 10}));
  EXPECT_EQ(zeckendorf(100).z(), 3u);
}

TEST(Zeckendorf, RejectsZero) { EXPECT_THROW(zeckendorf(0), InvalidArgument); }

TEST(Zeckendorf, UniqueAndGreedyAgreesWithSubsetSearch) {
  for (std::uint32_t n = 1; n <= 400; ++n) {
    const auto all = oracle::zeckendorf_by_subsets(n);
    ASSERT_EQ(all.size(), 1u) << "n=" << n;
    EXPECT_EQ(zeckendorf(n).indices, all.front()) << "n=" << n;
  }
}

TEST(Zeckendorf, Invariants) {
  for (std::uint32_t n = 1; n <= 100000; n += 37) {
    const auto d = zeckendorf(n);
    Fib sum = 0;
    for (std::size_t k = 0; k < d.indices.size(); ++k) {
      sum += fibonacci(d.indices[k]);
      if (k > 0) EXPECT_GE(d.indices[k] - d.indices[k - 1], 2);
    }
    EXPECT_EQ(sum, n);
  }
}

}  // namespace
}  // namespace zeck

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zeckgame/errors.hpp"
#include "zeckgame/fibonacci.hpp"
#include "zeckgame/game.hpp"

namespace zeck {
namespace {

GameState state(std::uint32_t n, std::vector<Count> counts) {
  return GameState::from_counts(n, std::move(counts));
}

// Summand values of a state, sorted, for comparison with the oracle.
oracle::Summands values_of(const GameState& s) {
  oracle::Summands out;
  for (int i = 1; i <= s.max_index(); ++i) {
    for (Count c = 0; c < s.count(i); ++c) out.push_back(fibonacci(i));
  }
  return out;
}

std::uint64_t total(const GameState& s) {
  std::uint64_t sum = 0;
  for (int i = 1; i <= s.max_index(); ++i) sum += s.count(i) * fibonacci(i);
  return sum;
}

TEST(GameState, Initial) {
  const auto s4 = GameState::initial(4);
  EXPECT_EQ(s4.count(1), 4u);
  EXPECT_EQ(s4.summands(), 4u);
  EXPECT_EQ(s4.max_index(), 3);

  const auto s1 = GameState::initial(1);
  EXPECT_EQ(s1.count(1), 1u);
  EXPECT_TRUE(is_terminal(s1));

  const auto s9 = GameState::initial(9);
  EXPECT_EQ(s9.count(1), 9u);
  EXPECT_EQ(to_string(s9), "{1^9}");

  EXPECT_THROW(GameState::initial(0), InvalidArgument);
}

TEST(GameState, FromCountsValidates) {
  EXPECT_NO_THROW(state(4, {0, 2, 0}));
  EXPECT_THROW(state(4, {0, 1, 0}), InvalidArgument);     // sums to 2
  EXPECT_THROW(state(4, {4, 0}), InvalidArgument);        // wrong length
  EXPECT_THROW(state(4, {4, 0, 0, 0}), InvalidArgument);
}

TEST(LegalMoves, Examples) {
  EXPECT_EQ(legal_moves(GameState::initial(4)),
            (std::vector<Move>{Move::merge_ones()}));
  EXPECT_EQ(legal_moves(state(4, {2, 1, 0})),
            (std::vector<Move>{Move::merge_ones(), Move::combine(1)}));
  EXPECT_TRUE(legal_moves(state(4, {1, 0, 1})).empty());
}

TEST(LegalMoves, FixedEnumerationOrder) {
  // n = 2*1 + 2*2 + 2*3 + 5 + 8 = 25 exercises every rule at once.
  const auto s = state(25, {2, 2, 2, 1, 1, 0, 0});
  EXPECT_EQ(legal_moves(s),
            (std::vector<Move>{Move::merge_ones(), Move::split_twos(),
                               Move::split(3), Move::combine(1),
                               Move::combine(2), Move::combine(3),
                               Move::combine(4)}));
}

TEST(ApplyMove, Examples) {
  EXPECT_EQ(apply_move(GameState::initial(4), Move::merge_ones()),
            state(4, {2, 1, 0}));
  EXPECT_EQ(apply_move(state(4, {0, 2, 0}), Move::split_twos()),
            state(4, {1, 0, 1}));
  // 5+5 -> 2+8
  EXPECT_EQ(apply_move(state(10, {0, 0, 0, 2, 0}), Move::split(4)),
            state(10, {0, 1, 0, 0, 1}));
}

TEST(ApplyMove, IllegalMovesRejected) {
  const auto s = GameState::initial(4);
  EXPECT_THROW(apply_move(s, Move::combine(1)), IllegalMove);
  EXPECT_THROW(apply_move(s, Move::split_twos()), IllegalMove);
  EXPECT_THROW(apply_move(s, Move::split(3)), IllegalMove);
  EXPECT_THROW(apply_move(state(4, {1, 0, 1}), Move::merge_ones()), IllegalMove);
  EXPECT_THROW(apply_move(s, Move::combine(9)), IllegalMove);
}

TEST(Move, ParameterRanges) {
  EXPECT_THROW(Move::split(2), InvalidArgument);
  EXPECT_THROW(Move::combine(0), InvalidArgument);
  EXPECT_EQ(describe(Move::split(4)), "5+5 -> 2+8");
  EXPECT_EQ(describe(Move::combine(1)), "1+2 -> 3");
}

TEST(IsTerminal, Examples) {
  EXPECT_TRUE(is_terminal(state(4, {1, 0, 1})));
  EXPECT_FALSE(is_terminal(state(4, {0, 2, 0})));
  EXPECT_TRUE(is_terminal(GameState::initial(1)));
}

TEST(Monovariant, Examples) {
  EXPECT_DOUBLE_EQ(monovariant(GameState::initial(4)), 4.0);
  EXPECT_NEAR(monovariant(state(4, {2, 1, 0})), 2.0 + std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(monovariant(state(4, {2, 1, 0})), 3.41421, 1e-5);
  EXPECT_NEAR(monovariant(state(4, {0, 2, 0})), 2.82843, 1e-5);
  EXPECT_NEAR(monovariant(state(4, {1, 0, 1})), 2.73205, 1e-5);
}

TEST(Monovariant, DeltasAreNegative) {
  EXPECT_LT(monovariant_delta(Move::merge_ones()), 0.0);
  EXPECT_LT(monovariant_delta(Move::split_twos()), 0.0);
  for (int i = 1; i < 60; ++i) {
    EXPECT_LT(monovariant_delta(Move::combine(i)), 0.0);
    if (i >= 3) EXPECT_LT(monovariant_delta(Move::split(i)), 0.0);
  }
}

TEST(CanonicalKey, EqualStatesEqualKeys) {
  // {1^2, 2^2} reached by play and built directly.
  const auto a = apply_move(apply_move(GameState::initial(6), Move::merge_ones()),
                            Move::merge_ones());  // {1^2, 2^2}
  const auto b = state(6, {2, 2, 0, 0});
  EXPECT_EQ(canonical_key(a), canonical_key(b));
  EXPECT_NE(canonical_key(state(4, {1, 0, 1})), canonical_key(state(4, {0, 2, 0})));
}

TEST(CanonicalKey, StableBytes) {
  // varint(4) then counts 4,0,0
  EXPECT_EQ(canonical_key(GameState::initial(4)).bytes(), std::string("\x04\x04\x00\x00", 4));
  EXPECT_EQ(std::hash<StateKey>{}(canonical_key(GameState::initial(4))),
            std::hash<StateKey>{}(canonical_key(GameState::initial(4))));
}

TEST(CanonicalKey, InjectiveOverReachableStates) {
  for (std::uint32_t n = 1; n <= 14; ++n) {
    const auto graph = oracle::reachable_graph(n);
    std::set<std::string> keys;
    for (const auto& [summands, next] : graph) {
      std::vector<Count> counts(static_cast<std::size_t>(ell_of(n)), 0);
      for (auto v : summands) ++counts[static_cast<std::size_t>(oracle::index_of(v)) - 1];
      keys.insert(canonical_key(state(n, counts)).bytes());
    }
    EXPECT_EQ(keys.size(), graph.size()) << "n=" << n;
  }
}

// Every rule preserves the total, lowers the monovariant by exactly the
// per-rule amount and stays within indices 1..ell(n).
void check_step(const GameState& before, const Move& m, const GameState& after) {
  ASSERT_EQ(total(after), before.n());
  EXPECT_LT(monovariant(after), monovariant(before));
  EXPECT_NEAR(monovariant(after) - monovariant(before), monovariant_delta(m), 1e-9);
  EXPECT_EQ(after.max_index(), ell_of(before.n()));
}

TEST(Properties, RandomPlayoutsTerminateAtZeckendorf) {
  std::mt19937_64 rng(20240611);
  for (std::uint32_t n = 1; n <= 200; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      GameState s = GameState::initial(n);
      while (!is_terminal(s)) {
        const auto moves = legal_moves(s);
        ASSERT_FALSE(moves.empty());
        const Move m = moves[rng() % moves.size()];
        GameState next = apply_move(s, m);
        check_step(s, m, next);
        s = std::move(next);
      }
      EXPECT_TRUE(legal_moves(s).empty());
      std::vector<int> idx;
      for (int i = 1; i <= s.max_index(); ++i) {
        ASSERT_LE(s.count(i), 1u);
        if (s.count(i)) idx.push_back(i);
      }
      EXPECT_EQ(idx, zeckendorf(n).indices) << "n=" << n;
    }
  }
}

TEST(Properties, MovesMatchLiteralRulesOnWholeGraph) {
  // The engine's successor sets coincide with the value-list oracle's on every
  // reachable state, and the only sink is the Zeckendorf decomposition.
  for (std::uint32_t n = 1; n <= 14; ++n) {
    const auto graph = oracle::reachable_graph(n);
    std::size_t sinks = 0;
    for (const auto& [summands, next] : graph) {
      std::vector<Count> counts(static_cast<std::size_t>(ell_of(n)), 0);
      for (auto v : summands) ++counts[static_cast<std::size_t>(oracle::index_of(v)) - 1];
      const GameState s = state(n, counts);
      std::set<oracle::Summands> engine_next;
      for (const Move& m : legal_moves(s)) {
        const GameState t = apply_move(s, m);
        check_step(s, m, t);
        engine_next.insert(values_of(t));
      }
      EXPECT_EQ(engine_next, next) << "n=" << n << " at " << to_string(s);
      EXPECT_EQ(is_terminal(s), next.empty());
      if (next.empty()) {
        ++sinks;
        std::vector<int> idx;
        for (auto v : summands) idx.push_back(oracle::index_of(v));
        EXPECT_EQ(idx, zeckendorf(n).indices);
      }
    }
    EXPECT_EQ(sinks, 1u) << "n=" << n;
  }
}

TEST(Properties, SmallGamesAreSinglePaths) {
  for (std::uint32_t n : {1u, 2u, 3u}) {
    const auto c = oracle::census(n);
    EXPECT_EQ(c.games, 1u);
    EXPECT_EQ(c.min_length, n - 1);
    EXPECT_EQ(c.max_length, n - 1);
  }
  for (std::uint32_t n = 4; n <= 14; ++n) {
    EXPECT_GE(oracle::count_games(n), 2u) << "n=" << n;
  }
}

}  // namespace
}  // namespace zeck

#include "zeckgame/strategies.hpp"

#include <limits>
#include <optional>
#include <ostream>
#include <type_traits>

#include "zeckgame/errors.hpp"

namespace zeck {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RandomStream RandomStream::for_game(std::uint64_t seed,
                                    std::uint64_t game_index) {
  return RandomStream(mix_seed(seed, game_index));
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("bound must be positive");
  // Largest multiple of bound representable; draws above it are rejected.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::string describe(const Policy& policy) {
  struct {
    std::string operator()(GreedyLargest) const { return "greedy"; }
    std::string operator()(ConjecturedLongest) const { return "longest"; }
    std::string operator()(UniformRandom r) const {
      return "random(" + std::to_string(r.seed) + ")";
    }
  } visitor;
  return std::visit(visitor, policy);
}

Policy parse_policy(const std::string& name, std::uint64_t seed) {
  if (name == "greedy") return GreedyLargest{};
  if (name == "longest") return ConjecturedLongest{};
  if (name == "random") return UniformRandom{seed};
  throw InvalidArgument("unknown policy '" + name +
                        "' (expected greedy, longest or random)");
}

Move greedy_largest_move(const GameState& state) {
  for (int i = state.max_index(); i >= 1; --i) {
    if (state.count(i) == 0) continue;
    if (i >= 2 && state.count(i - 1) >= 1) return Move::combine(i - 1);
    if (state.count(i + 1) >= 1) return Move::combine(i);
    if (state.count(i) >= 2) {
      if (i == 1) return Move::merge_ones();
      if (i == 2) return Move::split_twos();
      return Move::split(i);
    }
  }
  throw NoMovesAvailable("greedy: no move from terminal state " +
                         to_string(state));
}

Move conjectured_longest_move(const GameState& state) {
  // legal_moves() already enumerates in exactly this precedence.
  const auto moves = legal_moves(state);
  if (moves.empty()) {
    throw NoMovesAvailable("longest: no move from terminal state " +
                           to_string(state));
  }
  return moves.front();
}

Move random_move(const GameState& state, RandomStream& rng) {
  const auto moves = legal_moves(state);
  if (moves.empty()) {
    throw NoMovesAvailable("random: no move from terminal state " +
                           to_string(state));
  }
  return moves[rng.below(moves.size())];
}

Winner winner_for_length(std::size_t length) noexcept {
  if (length == 0) return Winner::NoMoves;
  return length % 2 == 1 ? Winner::Player1 : Winner::Player2;
}

std::string to_string(Winner winner) {
  switch (winner) {
    case Winner::Player1:
      return "player1";
    case Winner::Player2:
      return "player2";
    case Winner::NoMoves:
      return "none";
  }
  return "?";
}

GameRecord play_game(std::uint32_t n, const Policy& policy) {
  GameState state = GameState::initial(n);
  GameRecord record;
  record.n = n;
  record.policy = describe(policy);

  std::optional<RandomStream> rng;
  if (const auto* r = std::get_if<UniformRandom>(&policy)) {
    rng = RandomStream::for_game(r->seed, 0);
  }

  while (!is_terminal(state)) {
    Move move = std::visit(
        [&](const auto& p) -> Move {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, GreedyLargest>) {
            return greedy_largest_move(state);
          } else if constexpr (std::is_same_v<P, ConjecturedLongest>) {
            return conjectured_longest_move(state);
          } else {
            return random_move(state, *rng);
          }
        },
        policy);
    state = apply_move(state, move);
    record.moves.push_back(move);
  }
  record.winner = winner_for_length(record.moves.size());
  return record;
}

GameState replay(std::uint32_t n, std::span<const Move> moves) {
  GameState state = GameState::initial(n);
  for (const Move& m : moves) state = apply_move(state, m);
  return state;
}

void write_records_csv(std::ostream& out, std::span<const GameRecord> records) {
  out << "n,policy,length,winner\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.policy << ',' << r.length() << ','
        << to_string(r.winner) << '\n';
  }
}

}  // namespace zeck

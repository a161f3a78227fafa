#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zeckgame/game.hpp"

namespace zeck {

// Portable seeded stream. The engine's output sequence is fixed by the
// standard; bounded draws use rejection sampling so results do not depend
// on the standard library's distribution implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Stream for game `game_index` of a batch seeded with `seed`. Depends only
  // on the pair, so batch results do not depend on scheduling.
  static RandomStream for_game(std::uint64_t seed, std::uint64_t game_index);

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer over (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

struct GreedyLargest {
  friend bool operator==(GreedyLargest, GreedyLargest) = default;
};
struct ConjecturedLongest {
  friend bool operator==(ConjecturedLongest, ConjecturedLongest) = default;
};
struct UniformRandom {
  std::uint64_t seed = 0;
  friend bool operator==(UniformRandom, UniformRandom) = default;
};

using Policy = std::variant<GreedyLargest, ConjecturedLongest, UniformRandom>;

// "greedy", "longest" or "random(<seed>)".
std::string describe(const Policy& policy);

// Parses "greedy", "longest", "random" (seed taken from the argument).
Policy parse_policy(const std::string& name, std::uint64_t seed = 0);

// Acts on the largest summand that admits a move. For that summand the order
// is: combine with the index below, combine with the index above, then the
// duplicate rule (merge, split twos or split). Throws NoMovesAvailable.
Move greedy_largest_move(const GameState& state);

// MergeOnes, SplitTwos, Split ascending, Combine ascending: the first legal.
Move conjectured_longest_move(const GameState& state);

// Uniform over legal_moves(state), one bounded draw.
Move random_move(const GameState& state, RandomStream& rng);

enum class Winner { Player1, Player2, NoMoves };

// Player 1 moves first and the last mover wins.
Winner winner_for_length(std::size_t length) noexcept;

// "player1", "player2", "none".
std::string to_string(Winner winner);

struct GameRecord {
  std::uint32_t n = 0;
  std::string policy;
  std::vector<Move> moves;
  Winner winner = Winner::NoMoves;

  std::size_t length() const noexcept { return moves.size(); }
};

// Plays policy from {1^n} to the terminal state. UniformRandom draws from
// RandomStream::for_game(seed, 0).
GameRecord play_game(std::uint32_t n, const Policy& policy);

// Replays moves from {1^n}; throws IllegalMove on the first bad move.
GameState replay(std::uint32_t n, std::span<const Move> moves);

// Batch export: header "n,policy,length,winner" then one row per record.
void write_records_csv(std::ostream& out, std::span<const GameRecord> records);

}  // namespace zeck

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace zeck {

using Count = std::uint32_t;

enum class MoveKind : std::uint8_t {
  MergeOnes,  // F_1 + F_1 -> F_2
  SplitTwos,  // F_2 + F_2 -> F_1 + F_3
  Split,      // F_i + F_i -> F_{i-2} + F_{i+1}, i >= 3
  Combine,    // F_i + F_{i+1} -> F_{i+2}, i >= 1
};

// A move is identified by its rule and the lowest index it consumes.
// MergeOnes always carries index 1 and SplitTwos index 2.
class Move {
 public:
  static Move merge_ones() { return Move(MoveKind::MergeOnes, 1); }
  static Move split_twos() { return Move(MoveKind::SplitTwos, 2); }
  static Move split(int index);    // index >= 3
  static Move combine(int index);  // index >= 1

  MoveKind kind() const noexcept { return kind_; }
  int index() const noexcept { return index_; }

  friend bool operator==(const Move&, const Move&) = default;
  friend auto operator<=>(const Move&, const Move&) = default;

 private:
  Move(MoveKind kind, int index) : kind_(kind), index_(index) {}

  MoveKind kind_;
  int index_;
};

// Short human-readable form, e.g. "split(4)" or "combine(1)".
std::string to_string(const Move& move);

// Arithmetic form of the rewrite, e.g. "5+5 -> 3+8".
std::string describe(const Move& move);

// A position: the multiset of Fibonacci summands, stored as multiplicities
// over indices 1..ell(n). Immutable once constructed.
class GameState {
 public:
  // {1^n}. Throws InvalidArgument for n == 0.
  static GameState initial(std::uint32_t n);

  // Validates the vector length (ell(n)) and that the summands add up to n.
  static GameState from_counts(std::uint32_t n, std::vector<Count> counts);

  std::uint32_t n() const noexcept { return n_; }

  // ell(n): the highest index a reachable state can populate.
  int max_index() const noexcept { return static_cast<int>(counts_.size()); }

  // Multiplicity of F_index; zero for any index outside 1..max_index().
  Count count(int index) const noexcept;

  std::span<const Count> counts() const noexcept { return counts_; }

  // Total number of summands.
  std::uint64_t summands() const noexcept;

  friend bool operator==(const GameState&, const GameState&) = default;

 private:
  GameState(std::uint32_t n, std::vector<Count> counts)
      : n_(n), counts_(std::move(counts)) {}

  friend GameState apply_move(const GameState&, const Move&);

  std::uint32_t n_;
  std::vector<Count> counts_;
};

// Multiset notation, e.g. "{1^2, 2, 5^3}".
std::string to_string(const GameState& state);

// Legal moves in the fixed order MergeOnes, SplitTwos, Split ascending,
// Combine ascending. Positions in this list are stable move identifiers.
std::vector<Move> legal_moves(const GameState& state);

bool is_legal(const GameState& state, const Move& move);

// Throws IllegalMove when move is not legal in state.
GameState apply_move(const GameState& state, const Move& move);

// No legal move remains. Holds exactly at the Zeckendorf decomposition of n.
bool is_terminal(const GameState& state);

// Sum over summands of sqrt(index). Strictly decreases with every move.
double monovariant(const GameState& state);

// Exact change of monovariant() caused by move, from the per-rule formulas.
double monovariant_delta(const Move& move);

// Canonical byte encoding of the multiset; equal states give equal keys.
class StateKey {
 public:
  explicit StateKey(const GameState& state);

  const std::string& bytes() const noexcept { return bytes_; }

  friend bool operator==(const StateKey&, const StateKey&) = default;
  friend auto operator<=>(const StateKey&, const StateKey&) = default;

 private:
  std::string bytes_;
};

StateKey canonical_key(const GameState& state);

}  // namespace zeck

template <>
struct std::hash<zeck::StateKey> {
  std::size_t operator()(const zeck::StateKey& key) const noexcept {
    // FNV-1a: fixed across runs and platforms.
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : key.bytes()) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

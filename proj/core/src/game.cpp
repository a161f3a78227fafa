#include "zeckgame/game.hpp"

#include <cmath>
#include <numeric>

#include "zeckgame/errors.hpp"
#include "zeckgame/fibonacci.hpp"

namespace zeck {

namespace {

std::size_t slot(int index) { return static_cast<std::size_t>(index) - 1; }

void append_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

}  // namespace

Move Move::split(int index) {
  if (index < 3) throw InvalidArgument("split requires index >= 3");
  return Move(MoveKind::Split, index);
}

Move Move::combine(int index) {
  if (index < 1) throw InvalidArgument("combine requires index >= 1");
  return Move(MoveKind::Combine, index);
}

std::string to_string(const Move& move) {
  switch (move.kind()) {
    case MoveKind::MergeOnes:
      return "merge_ones";
    case MoveKind::SplitTwos:
      return "split_twos";
    case MoveKind::Split:
      return "split(" + std::to_string(move.index()) + ")";
    case MoveKind::Combine:
      return "combine(" + std::to_string(move.index()) + ")";
  }
  return "?";
}

std::string describe(const Move& move) {
  const int i = move.index();
  auto f = [](int k) { return std::to_string(fibonacci(k)); };
  switch (move.kind()) {
    case MoveKind::MergeOnes:
      return "1+1 -> 2";
    case MoveKind::SplitTwos:
      return "2+2 -> 1+3";
    case MoveKind::Split:
      return f(i) + "+" + f(i) + " -> " + f(i - 2) + "+" + f(i + 1);
    case MoveKind::Combine:
      return f(i) + "+" + f(i + 1) + " -> " + f(i + 2);
  }
  return "?";
}

GameState GameState::initial(std::uint32_t n) {
  const FibTable table(n);
  std::vector<Count> counts(static_cast<std::size_t>(table.ell()), 0);
  counts[0] = n;
  return GameState(n, std::move(counts));
}

GameState GameState::from_counts(std::uint32_t n, std::vector<Count> counts) {
  const FibTable table(n);
  if (counts.size() != static_cast<std::size_t>(table.ell())) {
    throw InvalidArgument("counts must have ell(n)=" +
                          std::to_string(table.ell()) + " entries, got " +
                          std::to_string(counts.size()));
  }
  std::uint64_t total = 0;
  for (int i = 1; i <= table.ell(); ++i) {
    total += static_cast<std::uint64_t>(counts[slot(i)]) * table.value(i);
  }
  if (total != n) {
    throw InvalidArgument("summands add up to " + std::to_string(total) +
                          ", expected " + std::to_string(n));
  }
  return GameState(n, std::move(counts));
}

Count GameState::count(int index) const noexcept {
  if (index < 1 || index > max_index()) return 0;
  return counts_[slot(index)];
}

std::uint64_t GameState::summands() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::string to_string(const GameState& state) {
  std::string out = "{";
  bool first = true;
  for (int i = 1; i <= state.max_index(); ++i) {
    const Count c = state.count(i);
    if (c == 0) continue;
    if (!first) out += ", ";
    first = false;
    out += std::to_string(fibonacci(i));
    if (c > 1) out += "^" + std::to_string(c);
  }
  return out + "}";
}

std::vector<Move> legal_moves(const GameState& state) {
  std::vector<Move> moves;
  if (state.count(1) >= 2) moves.push_back(Move::merge_ones());
  if (state.count(2) >= 2) moves.push_back(Move::split_twos());
  for (int i = 3; i <= state.max_index(); ++i) {
    if (state.count(i) >= 2) moves.push_back(Move::split(i));
  }
  for (int i = 1; i < state.max_index(); ++i) {
    if (state.count(i) >= 1 && state.count(i + 1) >= 1) {
      moves.push_back(Move::combine(i));
    }
  }
  return moves;
}

bool is_legal(const GameState& state, const Move& move) {
  const int i = move.index();
  switch (move.kind()) {
    case MoveKind::MergeOnes:
      return state.count(1) >= 2;
    case MoveKind::SplitTwos:
      return state.count(2) >= 2;
    case MoveKind::Split:
      return i >= 3 && state.count(i) >= 2;
    case MoveKind::Combine:
      return i >= 1 && state.count(i) >= 1 && state.count(i + 1) >= 1;
  }
  return false;
}

GameState apply_move(const GameState& state, const Move& move) {
  if (!is_legal(state, move)) {
    throw IllegalMove("move " + to_string(move) + " is not legal in " +
                      to_string(state));
  }
  std::vector<Count> c = state.counts_;
  const int i = move.index();
  switch (move.kind()) {
    case MoveKind::MergeOnes:
      c[slot(1)] -= 2;
      c[slot(2)] += 1;
      break;
    case MoveKind::SplitTwos:
      c[slot(2)] -= 2;
      c[slot(1)] += 1;
      c[slot(3)] += 1;
      break;
    case MoveKind::Split:
      c[slot(i)] -= 2;
      c[slot(i - 2)] += 1;
      c[slot(i + 1)] += 1;
      break;
    case MoveKind::Combine:
      c[slot(i)] -= 1;
      c[slot(i + 1)] -= 1;
      c[slot(i + 2)] += 1;
      break;
  }
  return GameState(state.n_, std::move(c));
}

bool is_terminal(const GameState& state) {
  for (int i = 1; i <= state.max_index(); ++i) {
    if (state.count(i) >= 2) return false;
    if (state.count(i) >= 1 && state.count(i + 1) >= 1) return false;
  }
  return true;
}

double monovariant(const GameState& state) {
  double sum = 0.0;
  for (int i = 1; i <= state.max_index(); ++i) {
    sum += static_cast<double>(state.count(i)) * std::sqrt(static_cast<double>(i));
  }
  return sum;
}

double monovariant_delta(const Move& move) {
  const double i = move.index();
  switch (move.kind()) {
    case MoveKind::MergeOnes:
      return -2.0 + std::sqrt(2.0);
    case MoveKind::SplitTwos:
      return -2.0 * std::sqrt(2.0) + 1.0 + std::sqrt(3.0);
    case MoveKind::Split:
      return -2.0 * std::sqrt(i) + std::sqrt(i - 2) + std::sqrt(i + 1);
    case MoveKind::Combine:
      return -std::sqrt(i) - std::sqrt(i + 1) + std::sqrt(i + 2);
  }
  return 0.0;
}

StateKey::StateKey(const GameState& state) {
  bytes_.reserve(static_cast<std::size_t>(state.max_index()) + 5);
  append_varint(bytes_, state.n());
  for (Count c : state.counts()) append_varint(bytes_, c);
}

StateKey canonical_key(const GameState& state) { return StateKey(state); }

}  // namespace zeck

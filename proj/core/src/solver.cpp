#include "zeckgame/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <unordered_set>

#include "zeckgame/errors.hpp"
#include "zeckgame/fibonacci.hpp"

namespace zeck {

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

void check_limit(const char* what, std::uint32_t n, std::uint32_t limit) {
  if (n == 0) throw InvalidArgument("n must be positive");
  if (n > limit) throw CapacityExceeded(what, n, limit);
}

}  // namespace

TranspositionTable::Shard& TranspositionTable::shard_for(
    const StateKey& key) const {
  return shards_[std::hash<StateKey>{}(key) % kShards];
}

std::optional<PositionValue> TranspositionTable::find(
    const StateKey& key) const {
  Shard& shard = shard_for(key);
  std::shared_lock lock(shard.mutex);
  auto it = shard.map.find(key);
  if (it == shard.map.end()) return std::nullopt;
  return it->second;
}

void TranspositionTable::insert(const StateKey& key,
                                const PositionValue& value) {
  Shard& shard = shard_for(key);
  std::unique_lock lock(shard.mutex);
  shard.map.emplace(key, value);
}

std::size_t TranspositionTable::size() const {
  std::size_t total = 0;
  for (const Shard& shard : shards_) {
    std::shared_lock lock(shard.mutex);
    total += shard.map.size();
  }
  return total;
}

Solver::Solver(std::uint32_t n, SolverOptions options)
    : n_(n), options_(options) {
  check_limit("solve: n", n, options_.limit);
  if (options_.threads == 0) options_.threads = 1;
}

PositionValue Solver::evaluate(const GameState& state) {
  const StateKey key(state);
  if (auto hit = table_.find(key)) return *hit;

  PositionValue value;
  const auto moves = legal_moves(state);
  if (moves.empty()) {
    value.can_finish_even = true;  // zero further moves
    value.games = 1;
  } else {
    value.min_remaining = std::numeric_limits<std::uint32_t>::max();
    for (const Move& m : moves) {
      const PositionValue child = evaluate(apply_move(state, m));
      value.mover_wins = value.mover_wins || !child.mover_wins;
      value.min_remaining = std::min(value.min_remaining, child.min_remaining + 1);
      value.max_remaining = std::max(value.max_remaining, child.max_remaining + 1);
      value.can_finish_even = value.can_finish_even || child.can_finish_odd;
      value.can_finish_odd = value.can_finish_odd || child.can_finish_even;
      value.games = saturating_add(value.games, child.games);
    }
  }
  table_.insert(key, value);
  return value;
}

void Solver::solve_parallel() {
  // Expand breadth-first until there is enough independent work, then let
  // the workers fill the shared table from that frontier.
  const std::size_t wanted = 4 * static_cast<std::size_t>(options_.threads);
  std::vector<GameState> frontier{GameState::initial(n_)};
  while (frontier.size() < wanted) {
    std::vector<GameState> next;
    std::unordered_set<StateKey> seen;
    for (const GameState& s : frontier) {
      for (const Move& m : legal_moves(s)) {
        GameState child = apply_move(s, m);
        if (seen.insert(StateKey(child)).second) next.push_back(std::move(child));
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < frontier.size(); i = cursor++) {
      evaluate(frontier[i]);
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < options_.threads; ++t) pool.emplace_back(worker);
}

SolveReport Solver::report() {
  if (!solved_ && options_.threads > 1) solve_parallel();
  const PositionValue root = evaluate(GameState::initial(n_));
  solved_ = true;

  SolveReport r;
  r.n = n_;
  if (root.max_remaining == 0) {
    r.winner = Winner::NoMoves;
  } else {
    r.winner = root.mover_wins ? Winner::Player1 : Winner::Player2;
  }
  r.reachable_states = table_.size();
  r.min_length = root.min_remaining;
  r.max_length = root.max_remaining;
  r.parities.even = root.can_finish_even;
  r.parities.odd = root.can_finish_odd;
  r.complete_games = root.games;
  return r;
}

std::size_t Solver::preferred_move(const GameState& state) {
  const auto moves = legal_moves(state);
  if (moves.empty()) {
    throw NoMovesAvailable("no move from terminal state " + to_string(state));
  }
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (!evaluate(apply_move(state, moves[i])).mover_wins) return i;
  }
  return 0;  // lost position: any move will do
}

std::vector<Move> Solver::winning_line() {
  GameState state = GameState::initial(n_);
  if (is_terminal(state)) {
    throw NoMovesAvailable("n=1 has no moves, so no winning line");
  }
  std::vector<Move> line;
  while (!is_terminal(state)) {
    const Move m = legal_moves(state)[preferred_move(state)];
    line.push_back(m);
    state = apply_move(state, m);
  }
  return line;
}

SolveReport solve(std::uint32_t n, const SolverOptions& options) {
  return Solver(n, options).report();
}

std::vector<Move> winning_line(std::uint32_t n, const SolverOptions& options) {
  return Solver(n, options).winning_line();
}

LengthRange extreme_lengths(std::uint32_t n, const SolverOptions& options) {
  const SolveReport r = solve(n, options);
  return {r.min_length, r.max_length};
}

BoundsReport bounds_report(std::uint32_t n) {
  const FibTable table(n);
  BoundsReport b;
  b.n = n;
  b.lower = n - zeckendorf(n).z();
  b.ell = table.ell();
  b.upper = static_cast<std::uint64_t>(table.ell()) * n;
  const double phi = std::numbers::phi;
  b.log_upper = std::log(std::sqrt(5.0) * n + 0.5) / std::log(phi) * n;
  return b;
}

GraphFormat parse_graph_format(const std::string& name) {
  if (name == "dot") return GraphFormat::Dot;
  if (name == "json") return GraphFormat::Json;
  throw InvalidArgument("unknown graph format '" + name +
                        "' (expected dot or json)");
}

}  // namespace zeck

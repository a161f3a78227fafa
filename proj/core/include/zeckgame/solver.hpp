#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zeckgame/game.hpp"
#include "zeckgame/strategies.hpp"

namespace zeck {

struct SolverOptions {
  // Largest n solve() accepts. Exceeding it is an error, never a truncation.
  std::uint32_t limit = 25;
  // Worker threads for the exhaustive search; 1 runs everything inline.
  unsigned threads = 1;
};

// Value of a position under optimal play and over all continuations.
struct PositionValue {
  bool mover_wins = false;       // normal play: a terminal position is lost
  std::uint32_t min_remaining = 0;
  std::uint32_t max_remaining = 0;
  bool can_finish_even = false;  // some continuation has an even move count
  bool can_finish_odd = false;
  // Number of distinct complete continuations, saturating at UINT64_MAX.
  std::uint64_t games = 0;
};

// Memo of PositionValue keyed by canonical state. Entries are pure functions
// of the state, so concurrent insertion order cannot change any result.
class TranspositionTable {
 public:
  std::optional<PositionValue> find(const StateKey& key) const;
  void insert(const StateKey& key, const PositionValue& value);
  std::size_t size() const;

 private:
  static constexpr std::size_t kShards = 16;

  struct Shard {
    mutable std::shared_mutex mutex;
    std::unordered_map<StateKey, PositionValue> map;
  };

  Shard& shard_for(const StateKey& key) const;

  mutable std::array<Shard, kShards> shards_;
};

struct Parities {
  bool odd = false;
  bool even = false;

  friend bool operator==(const Parities&, const Parities&) = default;
};

struct SolveReport {
  std::uint32_t n = 0;
  Winner winner = Winner::NoMoves;
  std::uint64_t reachable_states = 0;
  std::uint32_t min_length = 0;
  std::uint32_t max_length = 0;
  Parities parities;
  std::uint64_t complete_games = 0;  // saturating
};

// Exhaustive search of the game DAG from {1^n}. The DAG is acyclic because
// every move lowers the monovariant, so memoized recursion needs no cycle
// detection and longest paths are well defined.
class Solver {
 public:
  explicit Solver(std::uint32_t n, SolverOptions options = {});

  std::uint32_t n() const noexcept { return n_; }

  // Value of any state of this game, computing and caching as needed.
  PositionValue evaluate(const GameState& state);

  SolveReport report();

  // Principal variation: the mover keeps a forced win whenever one exists,
  // ties broken by legal_moves() order.
  std::vector<Move> winning_line();

  // Index into legal_moves(state) of the line's choice from state.
  std::size_t preferred_move(const GameState& state);

  const TranspositionTable& table() const noexcept { return table_; }

 private:
  void solve_parallel();

  std::uint32_t n_;
  SolverOptions options_;
  TranspositionTable table_;
  bool solved_ = false;
};

SolveReport solve(std::uint32_t n, const SolverOptions& options = {});

// Throws NoMovesAvailable for n == 1.
std::vector<Move> winning_line(std::uint32_t n,
                               const SolverOptions& options = {});

struct LengthRange {
  std::uint32_t min = 0;
  std::uint32_t max = 0;

  friend bool operator==(const LengthRange&, const LengthRange&) = default;
};

LengthRange extreme_lengths(std::uint32_t n, const SolverOptions& options = {});

struct BoundsReport {
  std::uint32_t n = 0;
  std::uint64_t lower = 0;  // n - Z(n), attained by the greedy game
  int ell = 0;
  std::uint64_t upper = 0;  // ell * n
  double log_upper = 0.0;   // n * log_phi(sqrt(5) n + 1/2)
};

BoundsReport bounds_report(std::uint32_t n);

enum class GraphFormat { Dot, Json };
enum class GraphShape {
  Dag,   // one node per distinct position
  Tree,  // one node per move sequence, like a drawn game tree
};

struct ExportOptions {
  std::uint32_t limit = 15;
  GraphShape shape = GraphShape::Dag;
  // Refuse unfolded trees with more nodes than this.
  std::uint64_t max_tree_nodes = 200000;
};

struct GraphNode {
  GameState state;
  PositionValue value;
  bool on_winning_line = false;
};

struct GraphEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Move move = Move::merge_ones();
  bool on_winning_line = false;
};

struct GameGraph {
  std::uint32_t n = 0;
  GraphShape shape = GraphShape::Dag;
  std::vector<GraphNode> nodes;  // nodes[0] is {1^n}; breadth-first order
  std::vector<GraphEdge> edges;  // grouped by source, legal_moves() order
};

GameGraph build_graph(std::uint32_t n, const ExportOptions& options = {});

std::string to_dot(const GameGraph& graph);

std::string export_tree(std::uint32_t n, GraphFormat format,
                        const ExportOptions& options = {});

GraphFormat parse_graph_format(const std::string& name);

}  // namespace zeck

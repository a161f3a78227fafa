#include <deque>
#include <sstream>
#include <unordered_map>

#include "zeckgame/errors.hpp"
#include "zeckgame/serialization.hpp"
#include "zeckgame/solver.hpp"

namespace zeck {

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

// Node count of the game tree unfolded below state.
std::uint64_t tree_size(const GameState& state,
                        std::unordered_map<StateKey, std::uint64_t>& memo) {
  const StateKey key(state);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::uint64_t size = 1;
  for (const Move& m : legal_moves(state)) {
    size = saturating_add(size, tree_size(apply_move(state, m), memo));
  }
  memo.emplace(key, size);
  return size;
}

GameGraph build_dag(std::uint32_t n, Solver& solver) {
  GameGraph graph;
  graph.n = n;
  graph.shape = GraphShape::Dag;

  std::unordered_map<StateKey, std::size_t> ids;
  const GameState root = GameState::initial(n);
  graph.nodes.push_back({root, solver.evaluate(root), false});
  ids.emplace(StateKey(root), 0);

  for (std::size_t id = 0; id < graph.nodes.size(); ++id) {
    const GameState state = graph.nodes[id].state;
    for (const Move& m : legal_moves(state)) {
      GameState child = apply_move(state, m);
      const StateKey key(child);
      auto [it, inserted] = ids.emplace(key, graph.nodes.size());
      if (inserted) {
        const PositionValue value = solver.evaluate(child);
        graph.nodes.push_back({std::move(child), value, false});
      }
      graph.edges.push_back({id, it->second, m, false});
    }
  }
  return graph;
}

GameGraph build_unfolded(std::uint32_t n, Solver& solver) {
  GameGraph graph;
  graph.n = n;
  graph.shape = GraphShape::Tree;
  const GameState root = GameState::initial(n);
  graph.nodes.push_back({root, solver.evaluate(root), false});
  for (std::size_t id = 0; id < graph.nodes.size(); ++id) {
    const GameState state = graph.nodes[id].state;
    for (const Move& m : legal_moves(state)) {
      GameState child = apply_move(state, m);
      const PositionValue value = solver.evaluate(child);
      graph.edges.push_back({id, graph.nodes.size(), m, false});
      graph.nodes.push_back({std::move(child), value, false});
    }
  }
  return graph;
}

// Marks the solver's principal variation, starting at the root.
void mark_winning_line(GameGraph& graph, Solver& solver) {
  std::vector<std::vector<std::size_t>> out(graph.nodes.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    out[graph.edges[e].from].push_back(e);
  }
  std::size_t node = 0;
  graph.nodes[0].on_winning_line = true;
  while (!out[node].empty()) {
    // Edges leave each node in legal_moves() order.
    const std::size_t e = out[node][solver.preferred_move(graph.nodes[node].state)];
    graph.edges[e].on_winning_line = true;
    node = graph.edges[e].to;
    graph.nodes[node].on_winning_line = true;
  }
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

GameGraph build_graph(std::uint32_t n, const ExportOptions& options) {
  if (n == 0) throw InvalidArgument("n must be positive");
  if (n > options.limit) throw CapacityExceeded("tree export: n", n, options.limit);

  Solver solver(n, SolverOptions{.limit = n, .threads = 1});
  GameGraph graph;
  if (options.shape == GraphShape::Tree) {
    std::unordered_map<StateKey, std::uint64_t> memo;
    const std::uint64_t size = tree_size(GameState::initial(n), memo);
    if (size > options.max_tree_nodes) {
      throw CapacityExceeded("tree export: unfolded node count", size,
                             options.max_tree_nodes);
    }
    graph = build_unfolded(n, solver);
  } else {
    graph = build_dag(n, solver);
  }
  mark_winning_line(graph, solver);
  return graph;
}

std::string to_dot(const GameGraph& graph) {
  std::ostringstream out;
  out << "digraph zeckendorf_" << graph.n << " {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=box, fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const GraphNode& node = graph.nodes[i];
    out << "  s" << i << " [label=\"" << dot_escape(to_string(node.state))
        << "\", tooltip=\"" << (node.value.mover_wins ? "mover wins" : "mover loses")
        << "\"";
    if (node.value.max_remaining == 0) out << ", peripheries=2";
    if (node.on_winning_line) out << ", color=green, penwidth=2";
    out << "];\n";
  }
  for (const GraphEdge& e : graph.edges) {
    out << "  s" << e.from << " -> s" << e.to << " [label=\""
        << dot_escape(describe(e.move)) << "\"";
    if (e.on_winning_line) out << ", color=green, penwidth=2";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_tree(std::uint32_t n, GraphFormat format,
                        const ExportOptions& options) {
  const GameGraph graph = build_graph(n, options);
  if (format == GraphFormat::Dot) return to_dot(graph);
  return encode(graph).dump(2) + "\n";
}

}  // namespace zeck

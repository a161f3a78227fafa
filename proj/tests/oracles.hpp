#pragma once

// Test-only reference implementations. They work on sorted lists of summand
// values (the game's "unordered list" read literally) and share no code with
// the library's multiplicity-vector engine.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Summands = std::vector<std::uint64_t>;  // sorted ascending

inline std::vector<std::uint64_t> fibs_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> f{1, 2};
  while (f.back() <= limit) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
  return f;  // last entry exceeds limit
}

// 1-based Fibonacci index of value, or 0 when value is not a Fibonacci number.
inline int index_of(std::uint64_t value) {
  const auto f = fibs_up_to(value);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == value) return static_cast<int>(i) + 1;
  }
  return 0;
}

// Every set of distinct, non-adjacent Fibonacci indices whose values sum to n.
inline std::vector<std::vector<int>> zeckendorf_by_subsets(std::uint64_t n) {
  auto f = fibs_up_to(n);
  f.pop_back();
  const int k = static_cast<int>(f.size());
  std::vector<std::vector<int>> found;
  for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
    if (mask & (mask >> 1)) continue;  // adjacent indices
    std::uint64_t sum = 0;
    std::vector<int> idx;
    for (int i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        sum += f[static_cast<std::size_t>(i)];
        idx.push_back(i + 1);
      }
    }
    if (sum == n) found.push_back(idx);
  }
  return found;
}

inline Summands with(Summands s, std::initializer_list<std::uint64_t> remove,
                     std::initializer_list<std::uint64_t> add) {
  for (auto v : remove) s.erase(std::find(s.begin(), s.end(), v));
  for (auto v : add) s.push_back(v);
  std::sort(s.begin(), s.end());
  return s;
}

// Distinct lists reachable in one move, following the rules literally:
// consecutive Fibonacci numbers combine into the next one; two equal terms
// F_i split as 1+1 -> 2, 2+2 -> 1+3, F_i+F_i -> F_{i-2}+F_{i+1}.
inline std::set<Summands> successors(const Summands& s) {
  const auto f = fibs_up_to(s.empty() ? 1 : 2 * s.back());
  auto fib = [&](int i) { return f[static_cast<std::size_t>(i) - 1]; };
  std::set<Summands> out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      const int i = index_of(s[a]);
      const int j = index_of(s[b]);
      if (j == i + 1) out.insert(with(s, {s[a], s[b]}, {fib(i + 2)}));
      if (i == j) {
        if (i == 1) out.insert(with(s, {1, 1}, {2}));
        else if (i == 2) out.insert(with(s, {2, 2}, {1, 3}));
        else out.insert(with(s, {s[a], s[a]}, {fib(i - 2), fib(i + 1)}));
      }
    }
  }
  return out;
}

inline Summands ones(std::uint64_t n) { return Summands(n, 1); }

// Whole reachable graph from {1^n}: state -> successors.
inline std::map<Summands, std::set<Summands>> reachable_graph(std::uint64_t n) {
  std::map<Summands, std::set<Summands>> graph;
  std::vector<Summands> stack{ones(n)};
  while (!stack.empty()) {
    Summands s = stack.back();
    stack.pop_back();
    if (graph.contains(s)) continue;
    auto next = successors(s);
    for (const auto& t : next) stack.push_back(t);
    graph.emplace(std::move(s), std::move(next));
  }
  return graph;
}

// Number of distinct complete games, by path counting over the graph.
inline std::uint64_t count_games(std::uint64_t n) {
  const auto graph = reachable_graph(n);
  std::map<Summands, std::uint64_t> memo;
  auto paths = [&](auto&& self, const Summands& s) -> std::uint64_t {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    const auto& next = graph.at(s);
    std::uint64_t total = next.empty() ? 1 : 0;
    for (const auto& t : next) total += self(self, t);
    memo.emplace(s, total);
    return total;
  };
  return paths(paths, ones(n));
}

// Plain recursion over every move sequence, no memoization.
struct GameCensus {
  std::uint64_t games = 0;
  std::uint32_t min_length = UINT32_MAX;
  std::uint32_t max_length = 0;
  bool odd = false;
  bool even = false;
  std::set<Summands> terminals;
};

inline void walk(const Summands& s, std::uint32_t depth, GameCensus& c) {
  const auto next = successors(s);
  if (next.empty()) {
    ++c.games;
    c.min_length = std::min(c.min_length, depth);
    c.max_length = std::max(c.max_length, depth);
    (depth % 2 ? c.odd : c.even) = true;
    c.terminals.insert(s);
    return;
  }
  for (const auto& t : next) walk(t, depth + 1, c);
}

inline GameCensus census(std::uint64_t n) {
  GameCensus c;
  walk(ones(n), 0, c);
  return c;
}

// Minimax without memoization: does the player to move from s win?
inline bool mover_wins(const Summands& s) {
  for (const auto& t : successors(s)) {
    if (!mover_wins(t)) return true;
  }
  return false;
}

}  // namespace oracle

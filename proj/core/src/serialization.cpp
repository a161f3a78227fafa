#include "zeckgame/serialization.hpp"

#include <limits>

#include "zeckgame/errors.hpp"

namespace zeck {

namespace {

const char* kind_name(MoveKind kind) {
  switch (kind) {
    case MoveKind::MergeOnes:
      return "merge_ones";
    case MoveKind::SplitTwos:
      return "split_twos";
    case MoveKind::Split:
      return "split";
    case MoveKind::Combine:
      return "combine";
  }
  return "?";
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw InvalidArgument(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

template <typename T>
T get_as(const Json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("field '") + name + "': " + e.what());
  }
}

std::uint32_t get_positive(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1 ||
      v.get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument(std::string("field '") + name +
                          "' must be a positive integer");
  }
  return v.get<std::uint32_t>();
}

}  // namespace

Json encode(const Move& move) {
  Json j;
  j["kind"] = kind_name(move.kind());
  if (move.kind() == MoveKind::Split || move.kind() == MoveKind::Combine) {
    j["index"] = move.index();
  }
  return j;
}

Json encode(const GameState& state) {
  Json j;
  j["n"] = state.n();
  j["counts"] = Json::array();
  for (Count c : state.counts()) j["counts"].push_back(c);
  return j;
}

Json encode(Winner winner) { return to_string(winner); }

Json encode(const GameRecord& record) {
  Json j;
  j["n"] = record.n;
  j["policy"] = record.policy;
  j["moves"] = Json::array();
  for (const Move& m : record.moves) j["moves"].push_back(encode(m));
  j["length"] = record.length();
  j["winner"] = encode(record.winner);
  return j;
}

Json encode(const SolveReport& r) {
  Json j;
  j["n"] = r.n;
  j["winner"] = encode(r.winner);
  j["reachable_states"] = r.reachable_states;
  j["min_length"] = r.min_length;
  j["max_length"] = r.max_length;
  Json parities = Json::array();
  if (r.parities.odd) parities.push_back("odd");
  if (r.parities.even) parities.push_back("even");
  j["parities"] = parities;
  return j;
}

Json encode(const BoundsReport& b) {
  Json j;
  j["n"] = b.n;
  j["lower"] = b.lower;
  j["ell"] = b.ell;
  j["upper"] = b.upper;
  j["log_upper"] = b.log_upper;
  return j;
}

Json encode(const SimStats& s) {
  Json j;
  j["n"] = s.n;
  j["trials"] = s.trials;
  j["seed"] = s.seed;
  Json hist = Json::array();
  for (const auto& [length, freq] : s.histogram) {
    hist.push_back({{"length", length}, {"frequency", freq}});
  }
  j["histogram"] = hist;
  j["mean"] = s.mean;
  j["variance"] = s.variance;
  j["skewness"] = s.skewness;
  j["excess_kurtosis"] = s.excess_kurtosis;
  j["p1_wins"] = s.p1_wins;
  j["p2_wins"] = s.p2_wins;
  return j;
}

Json encode(const GaussianFit& fit) {
  Json j;
  j["mu"] = fit.mu;
  j["sigma"] = fit.sigma;
  Json curve = Json::array();
  for (const auto& [x, y] : fit.curve) curve.push_back({{"length", x}, {"expected", y}});
  j["curve"] = curve;
  return j;
}

Json encode(const ScalingResult& scaling) {
  Json j;
  Json rows = Json::array();
  for (const auto& [n, mean] : scaling.means) {
    rows.push_back({{"n", n}, {"mean", mean}});
  }
  j["means"] = rows;
  j["slope"] = scaling.slope;
  j["intercept"] = scaling.intercept;
  return j;
}

Json encode(const GameGraph& graph) {
  Json j;
  j["n"] = graph.n;
  j["shape"] = graph.shape == GraphShape::Dag ? "dag" : "tree";
  Json nodes = Json::array();
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const GraphNode& node = graph.nodes[i];
    Json nj;
    nj["id"] = i;
    nj["state"] = encode(node.state);
    nj["label"] = to_string(node.state);
    nj["terminal"] = node.value.max_remaining == 0;
    nj["mover_wins"] = node.value.mover_wins;
    nj["on_winning_line"] = node.on_winning_line;
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const GraphEdge& e : graph.edges) {
    edges.push_back({{"from", e.from},
                     {"to", e.to},
                     {"move", encode(e.move)},
                     {"winning_line", e.on_winning_line}});
  }
  j["edges"] = std::move(edges);
  return j;
}

Move decode_move(const Json& j) {
  const auto kind = get_as<std::string>(j, "kind");
  if (kind == "merge_ones") return Move::merge_ones();
  if (kind == "split_twos") return Move::split_twos();
  if (kind == "split" || kind == "combine") {
    const Json& idx = field(j, "index");
    if (!idx.is_number_integer()) {
      throw InvalidArgument("field 'index' must be an integer");
    }
    const auto i = idx.get<std::int64_t>();
    if (i > 1000) throw InvalidArgument("field 'index' out of range");
    return kind == "split" ? Move::split(static_cast<int>(i))
                           : Move::combine(static_cast<int>(i));
  }
  throw InvalidArgument("unknown move kind '" + kind + "'");
}

GameState decode_state(const Json& j) {
  const std::uint32_t n = get_positive(j, "n");
  const auto counts = get_as<std::vector<Count>>(j, "counts");
  return GameState::from_counts(n, counts);
}

Winner decode_winner(const Json& j) {
  if (!j.is_string()) throw InvalidArgument("winner must be a string");
  const auto w = j.get<std::string>();
  if (w == "player1") return Winner::Player1;
  if (w == "player2") return Winner::Player2;
  if (w == "none") return Winner::NoMoves;
  throw InvalidArgument("unknown winner '" + w + "'");
}

GameRecord decode_record(const Json& j) {
  GameRecord r;
  r.n = get_positive(j, "n");
  r.policy = get_as<std::string>(j, "policy");
  const Json& moves = field(j, "moves");
  if (!moves.is_array()) throw InvalidArgument("field 'moves' must be an array");
  for (const Json& m : moves) r.moves.push_back(decode_move(m));
  r.winner = decode_winner(field(j, "winner"));
  if (get_as<std::size_t>(j, "length") != r.moves.size()) {
    throw InvalidArgument("length does not match the move list");
  }
  return r;
}

SimStats decode_sim_stats(const Json& j) {
  SimStats s;
  s.n = get_positive(j, "n");
  s.seed = get_as<std::uint64_t>(j, "seed");
  const Json& hist = field(j, "histogram");
  if (!hist.is_array()) throw InvalidArgument("histogram must be an array");
  for (const Json& bin : hist) {
    s.histogram[get_as<std::uint32_t>(bin, "length")] +=
        get_as<std::uint64_t>(bin, "frequency");
  }
  compute_moments(s);
  if (get_as<std::uint64_t>(j, "trials") != s.trials) {
    throw InvalidArgument("trials does not match histogram total");
  }
  return s;
}

}  // namespace zeck

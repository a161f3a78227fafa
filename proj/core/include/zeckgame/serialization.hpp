#pragma once

// JSON schema shared by the CLI output files and the HTTP service.
//
//   GameState   {"n": 10, "counts": [c1, c2, ..., c_ell]}   counts[j] is the
//               multiplicity of F_{j+1}; the array always has ell(n) entries.
//   Move        {"kind": "merge_ones"|"split_twos"|"split"|"combine",
//                "index": i}   index present only for split and combine.
//   GameRecord  {"n", "policy", "moves": [Move...], "length", "winner"}
//   winner      "player1" | "player2" | "none"

#include <nlohmann/json.hpp>

#include "zeckgame/game.hpp"
#include "zeckgame/simulator.hpp"
#include "zeckgame/solver.hpp"
#include "zeckgame/strategies.hpp"

namespace zeck {

using Json = nlohmann::ordered_json;

Json encode(const Move& move);
Json encode(const GameState& state);
Json encode(const GameRecord& record);
Json encode(Winner winner);
Json encode(const SolveReport& report);
Json encode(const BoundsReport& report);
Json encode(const SimStats& stats);
Json encode(const GaussianFit& fit);
Json encode(const ScalingResult& scaling);
Json encode(const GameGraph& graph);

// Decoders throw InvalidArgument on schema violations.
Move decode_move(const Json& j);
GameState decode_state(const Json& j);
GameRecord decode_record(const Json& j);
Winner decode_winner(const Json& j);
SimStats decode_sim_stats(const Json& j);

}  // namespace zeck

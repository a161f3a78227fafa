#include <gtest/gtest.h>

#include "zeckgame/errors.hpp"
#include "zeckgame/serialization.hpp"

namespace zeck {
namespace {

TEST(Serialization, Moves) {
  EXPECT_EQ(encode(Move::merge_ones()).dump(), R"({"kind":"merge_ones"})");
  EXPECT_EQ(encode(Move::split_twos()).dump(), R"({"kind":"split_twos"})");
  EXPECT_EQ(encode(Move::split(4)).dump(), R"({"kind":"split","index":4})");
  EXPECT_EQ(encode(Move::combine(1)).dump(), R"({"kind":"combine","index":1})");
  for (const Move& m : {Move::merge_ones(), Move::split_twos(), Move::split(7),
                        Move::combine(3)}) {
    EXPECT_EQ(decode_move(encode(m)), m);
  }
}

TEST(Serialization, BadMovesRejected) {
  EXPECT_THROW(decode_move(Json::parse(R"({"kind":"teleport"})")), InvalidArgument);
  EXPECT_THROW(decode_move(Json::parse(R"({"kind":"split"})")), InvalidArgument);
  EXPECT_THROW(decode_move(Json::parse(R"({"kind":"split","index":2})")), InvalidArgument);
  EXPECT_THROW(decode_move(Json::parse(R"({"kind":"combine","index":"x"})")),
               InvalidArgument);
  EXPECT_THROW(decode_move(Json::parse(R"([1,2])")), InvalidArgument);
  EXPECT_THROW(decode_move(Json::parse(R"({})")), InvalidArgument);
}

TEST(Serialization, State) {
  const auto s = GameState::from_counts(10, {2, 1, 2, 0, 0});
  EXPECT_EQ(encode(s).dump(), R"({"n":10,"counts":[2,1,2,0,0]})");
  EXPECT_EQ(decode_state(encode(s)), s);
  EXPECT_THROW(decode_state(Json::parse(R"({"n":10,"counts":[2,1]})")), InvalidArgument);
  EXPECT_THROW(decode_state(Json::parse(R"({"n":0,"counts":[]})")), InvalidArgument);
  EXPECT_THROW(decode_state(Json::parse(R"({"n":4,"counts":[-1,0,0]})")), InvalidArgument);
}

TEST(Serialization, RecordRoundTrip) {
  const auto r = play_game(20, UniformRandom{3});
  const Json j = encode(r);
  EXPECT_EQ(j["n"], 20);
  EXPECT_EQ(j["policy"], "random(3)");
  EXPECT_EQ(j["length"], r.length());
  const auto back = decode_record(j);
  EXPECT_EQ(back.moves, r.moves);
  EXPECT_EQ(back.winner, r.winner);
  EXPECT_EQ(back.policy, r.policy);

  Json bad = j;
  bad["moves"].push_back(encode(Move::split(9)));
  EXPECT_THROW(decode_record(bad), Error);
}

TEST(Serialization, Winner) {
  EXPECT_EQ(encode(Winner::Player1), "player1");
  EXPECT_EQ(encode(Winner::Player2), "player2");
  EXPECT_EQ(encode(Winner::NoMoves), "none");
  EXPECT_EQ(decode_winner(Json("player2")), Winner::Player2);
  EXPECT_THROW(decode_winner(Json("player3")), InvalidArgument);
  EXPECT_THROW(decode_winner(Json(2)), InvalidArgument);
}

TEST(Serialization, SolveAndBounds) {
  const Json s = encode(solve(4));
  EXPECT_EQ(s["winner"], "player2");
  EXPECT_EQ(s["min_length"], 2);
  EXPECT_EQ(s["max_length"], 3);
  EXPECT_EQ(s["parities"], Json::parse(R"(["odd","even"])"));
  EXPECT_EQ(s["reachable_states"], 4);

  const Json b = encode(bounds_report(4));
  EXPECT_EQ(b["lower"], 2);
  EXPECT_EQ(b["ell"], 3);
  EXPECT_EQ(b["upper"], 12);
  EXPECT_TRUE(b["log_upper"].is_number_float());
}

TEST(Serialization, SimStatsRoundTrip) {
  const auto stats = simulate(30, 300, 4);
  const Json j = encode(stats);
  EXPECT_EQ(j["histogram"][0].size(), 2u);
  EXPECT_TRUE(j["histogram"][0].contains("length"));
  EXPECT_TRUE(j["histogram"][0].contains("frequency"));
  EXPECT_EQ(decode_sim_stats(j), stats);
  EXPECT_THROW(decode_sim_stats(Json::parse(R"({"n":3})")), InvalidArgument);
}

TEST(Serialization, Graph) {
  const Json g = encode(build_graph(2));
  EXPECT_EQ(g["shape"], "dag");
  ASSERT_EQ(g["nodes"].size(), 2u);
  EXPECT_EQ(g["nodes"][0]["label"], "{1^2}");
  EXPECT_EQ(g["nodes"][0]["mover_wins"], true);
  EXPECT_EQ(g["nodes"][1]["terminal"], true);
  ASSERT_EQ(g["edges"].size(), 1u);
  EXPECT_EQ(g["edges"][0]["move"]["kind"], "merge_ones");
  EXPECT_EQ(g["edges"][0]["winning_line"], true);
}

}  // namespace
}  // namespace zeck

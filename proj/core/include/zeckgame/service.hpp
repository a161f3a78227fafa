#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "zeckgame/errors.hpp"
#include "zeckgame/game.hpp"
#include "zeckgame/serialization.hpp"
#include "zeckgame/strategies.hpp"

namespace zeck {

class NotFound : public Error {
 public:
  using Error::Error;
};

// Request is well formed but the session cannot accept it right now
// (wrong seat, finished game).
class Conflict : public Error {
 public:
  using Error::Error;
};

struct ServiceConfig {
  std::uint32_t solve_limit = 25;
  std::uint32_t export_limit = 15;
  std::uint64_t max_sim_trials = 100000;
  unsigned sim_threads = 1;
  // Sessions are written here by save_snapshot() and read on construction.
  std::string snapshot_path;
};

enum class GameMode { HumanVsHuman, HumanVsEngine };

struct EngineSeat {
  std::string policy;  // "greedy", "longest" or "random"
  std::uint64_t seed = 0;
  int seat = 2;        // 1 or 2
};

struct PlayedMove {
  int player = 1;
  Move move = Move::merge_ones();
};

struct GameSession {
  std::string id;
  GameMode mode = GameMode::HumanVsHuman;
  std::optional<EngineSeat> engine;
  GameState state = GameState::initial(1);
  std::vector<PlayedMove> history;

  bool finished() const { return is_terminal(state); }
  // Seat to move: Player 1 makes the first move.
  int to_move() const { return history.size() % 2 == 0 ? 1 : 2; }
};

struct CreateGameRequest {
  std::uint32_t n = 0;
  GameMode mode = GameMode::HumanVsHuman;
  std::optional<EngineSeat> engine;  // required for HumanVsEngine
};

// In-memory sessions plus analysis wrappers. Each session serializes its own
// mutations; reads copy a consistent snapshot under the same lock.
class GameService {
 public:
  explicit GameService(ServiceConfig config = {});

  const ServiceConfig& config() const noexcept { return config_; }

  // Throws InvalidArgument for n < 2 or a bad engine description. When the
  // engine holds seat 1 its opening move is already applied.
  GameSession create_game(const CreateGameRequest& request);

  // Throws NotFound.
  GameSession get_game(const std::string& id) const;

  // Applies the caller's move and, when the game goes on and the engine holds
  // the next seat, the engine's reply. Returns the moves applied, in order.
  // Throws NotFound, Conflict (finished or out of turn) or IllegalMove.
  std::vector<PlayedMove> post_move(const std::string& id, int player,
                                    const Move& move);

  // Convenience: post_move followed by get_game, atomically.
  std::pair<GameSession, std::vector<PlayedMove>> play(const std::string& id,
                                                       int player,
                                                       const Move& move);

  std::size_t session_count() const;

  Json analysis_solve(std::uint32_t n) const;
  Json analysis_bounds(std::uint32_t n) const;
  Json analysis_simulate(std::uint32_t n, std::uint64_t trials,
                         std::uint64_t seed) const;
  // DOT text or pretty JSON.
  std::string analysis_tree(std::uint32_t n, GraphFormat format) const;

  // Writes every session to config().snapshot_path (no-op when empty).
  void save_snapshot() const;
  void load_snapshot(const std::string& path);

 private:
  struct Slot {
    mutable std::mutex mutex;
    GameSession session;
    std::optional<RandomStream> engine_rng;
  };

  std::shared_ptr<Slot> find_slot(const std::string& id) const;
  std::string fresh_id();
  static Move engine_move(Slot& slot);
  static void apply(Slot& slot, int player, const Move& move);
  static std::vector<PlayedMove> engine_replies(Slot& slot);

  ServiceConfig config_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::mutex id_mutex_;
  std::mt19937_64 id_source_;
};

std::string to_string(GameMode mode);
GameMode parse_game_mode(const std::string& name);

// Wire form of a session, including the legal moves of its current state in
// legal_moves() order.
Json encode(const GameSession& session);
Json encode(const PlayedMove& played);

// Parses {"n", "mode", "policy", "engine_seat", "seed"}.
CreateGameRequest decode_create_request(const Json& j);

struct HttpConfig {
  std::string bind = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
};

// Reads ZECKGAME_BIND and ZECKGAME_PORT over the given defaults.
HttpConfig http_config_from_env(HttpConfig defaults = {});

// REST front end over a GameService:
//   POST /games                  GET /games/{id}    POST /games/{id}/moves
//   GET /analysis/solve?n=       GET /analysis/bounds?n=
//   GET /analysis/simulate?n=&trials=&seed=
//   GET /analysis/tree?n=&format=dot|json
class HttpServer {
 public:
  HttpServer(GameService& service, HttpConfig config);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds the socket and returns the port actually bound. Throws Error.
  int bind();
  // Serves until stop(); bind() must have succeeded.
  void listen();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace zeck

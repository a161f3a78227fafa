#include "zeckgame/service.hpp"

#include <cstdlib>
#include <fstream>
#include <random>

#include <fmt/format.h>

#include "zeckgame/simulator.hpp"
#include "zeckgame/solver.hpp"

namespace zeck {

namespace {

EngineSeat validated(EngineSeat engine) {
  parse_policy(engine.policy, engine.seed);  // throws on unknown names
  if (engine.seat != 1 && engine.seat != 2) {
    throw InvalidArgument("engine_seat must be 1 or 2");
  }
  return engine;
}

void check_n(std::uint32_t n) {
  if (n == 0) throw InvalidArgument("n must be positive");
}

}  // namespace

std::string to_string(GameMode mode) {
  return mode == GameMode::HumanVsHuman ? "human_vs_human" : "human_vs_engine";
}

GameMode parse_game_mode(const std::string& name) {
  if (name == "human_vs_human") return GameMode::HumanVsHuman;
  if (name == "human_vs_engine") return GameMode::HumanVsEngine;
  throw InvalidArgument("unknown mode '" + name +
                        "' (expected human_vs_human or human_vs_engine)");
}

GameService::GameService(ServiceConfig config)
    : config_(std::move(config)), id_source_(std::random_device{}()) {
  if (!config_.snapshot_path.empty()) {
    std::ifstream probe(config_.snapshot_path);
    if (probe) load_snapshot(config_.snapshot_path);
  }
}

std::string GameService::fresh_id() {
  std::lock_guard lock(id_mutex_);
  for (;;) {
    std::string id = fmt::format("{:016x}", id_source_());
    std::shared_lock read(sessions_mutex_);
    if (!sessions_.contains(id)) return id;
  }
}

std::shared_ptr<GameService::Slot> GameService::find_slot(
    const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("no game with id '" + id + "'");
  return it->second;
}

Move GameService::engine_move(Slot& slot) {
  const GameState& state = slot.session.state;
  const std::string& policy = slot.session.engine->policy;
  if (policy == "greedy") return greedy_largest_move(state);
  if (policy == "longest") return conjectured_longest_move(state);
  return random_move(state, *slot.engine_rng);
}

void GameService::apply(Slot& slot, int player, const Move& move) {
  slot.session.state = apply_move(slot.session.state, move);
  slot.session.history.push_back({player, move});
}

std::vector<PlayedMove> GameService::engine_replies(Slot& slot) {
  std::vector<PlayedMove> played;
  GameSession& s = slot.session;
  while (s.engine && !s.finished() && s.to_move() == s.engine->seat) {
    const int seat = s.to_move();
    const Move m = engine_move(slot);
    apply(slot, seat, m);
    played.push_back({seat, m});
  }
  return played;
}

GameSession GameService::create_game(const CreateGameRequest& request) {
  if (request.n < 2) {
    throw InvalidArgument("n must be at least 2 (n=1 has no moves to play)");
  }
  auto slot = std::make_shared<Slot>();
  GameSession& s = slot->session;
  s.mode = request.mode;
  s.state = GameState::initial(request.n);
  if (request.mode == GameMode::HumanVsEngine) {
    if (!request.engine) {
      throw InvalidArgument("human_vs_engine needs an engine policy and seat");
    }
    s.engine = validated(*request.engine);
    if (s.engine->policy == "random") {
      slot->engine_rng = RandomStream::for_game(s.engine->seed, 0);
    }
  }
  engine_replies(*slot);

  s.id = fresh_id();
  GameSession copy = s;
  std::unique_lock lock(sessions_mutex_);
  sessions_.emplace(copy.id, std::move(slot));
  return copy;
}

GameSession GameService::get_game(const std::string& id) const {
  auto slot = find_slot(id);
  std::lock_guard lock(slot->mutex);
  return slot->session;
}

std::vector<PlayedMove> GameService::post_move(const std::string& id,
                                               int player, const Move& move) {
  return play(id, player, move).second;
}

std::pair<GameSession, std::vector<PlayedMove>> GameService::play(
    const std::string& id, int player, const Move& move) {
  auto slot = find_slot(id);
  std::lock_guard lock(slot->mutex);
  GameSession& s = slot->session;
  if (s.finished()) throw Conflict("game " + id + " is already finished");
  if (player != 1 && player != 2) {
    throw InvalidArgument("player must be 1 or 2");
  }
  if (player != s.to_move()) {
    throw Conflict(fmt::format("it is player {}'s turn, not player {}'s",
                               s.to_move(), player));
  }
  if (s.engine && s.engine->seat == player) {
    throw Conflict(fmt::format("seat {} is played by the engine", player));
  }
  apply(*slot, player, move);  // IllegalMove leaves the session untouched
  std::vector<PlayedMove> played{{player, move}};
  for (const auto& reply : engine_replies(*slot)) played.push_back(reply);
  return {s, played};
}

std::size_t GameService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

Json GameService::analysis_solve(std::uint32_t n) const {
  check_n(n);
  return encode(solve(n, SolverOptions{.limit = config_.solve_limit}));
}

Json GameService::analysis_bounds(std::uint32_t n) const {
  check_n(n);
  return encode(bounds_report(n));
}

Json GameService::analysis_simulate(std::uint32_t n, std::uint64_t trials,
                                    std::uint64_t seed) const {
  check_n(n);
  if (trials > config_.max_sim_trials) {
    throw CapacityExceeded("simulate: trials", trials, config_.max_sim_trials);
  }
  return encode(simulate(n, trials, seed, SimOptions{config_.sim_threads}));
}

std::string GameService::analysis_tree(std::uint32_t n,
                                       GraphFormat format) const {
  return export_tree(n, format, ExportOptions{.limit = config_.export_limit});
}

void GameService::save_snapshot() const {
  if (config_.snapshot_path.empty()) return;
  Json sessions = Json::array();
  {
    std::shared_lock lock(sessions_mutex_);
    for (const auto& [id, slot] : sessions_) {
      std::lock_guard session_lock(slot->mutex);
      sessions.push_back(encode(slot->session));
    }
  }
  std::ofstream out(config_.snapshot_path, std::ios::trunc);
  if (!out) {
    throw Error("cannot write snapshot to " + config_.snapshot_path);
  }
  out << Json{{"sessions", sessions}}.dump(2) << '\n';
}

void GameService::load_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read snapshot " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("snapshot " + path + ": " + e.what());
  }
  for (const Json& sj : doc.at("sessions")) {
    // Replaying the history also re-derives the engine's stream position.
    auto slot = std::make_shared<Slot>();
    GameSession& s = slot->session;
    s.id = sj.at("id").get<std::string>();
    s.mode = parse_game_mode(sj.at("mode").get<std::string>());
    s.state = GameState::initial(sj.at("n").get<std::uint32_t>());
    if (!sj.at("engine").is_null()) {
      const Json& e = sj.at("engine");
      s.engine = validated({e.at("policy").get<std::string>(),
                            e.at("seed").get<std::uint64_t>(),
                            e.at("seat").get<int>()});
      if (s.engine->policy == "random") {
        slot->engine_rng = RandomStream::for_game(s.engine->seed, 0);
      }
    }
    for (const Json& hj : sj.at("history")) {
      const int player = hj.at("player").get<int>();
      const Move move = decode_move(hj.at("move"));
      if (player != s.to_move()) {
        throw InvalidArgument("snapshot history out of turn in " + s.id);
      }
      if (s.engine && s.engine->seat == player && engine_move(*slot) != move) {
        throw InvalidArgument("snapshot engine move diverges in " + s.id);
      }
      apply(*slot, player, move);
    }
    std::unique_lock lock(sessions_mutex_);
    sessions_[s.id] = std::move(slot);
  }
}

Json encode(const PlayedMove& played) {
  return Json{{"player", played.player}, {"move", encode(played.move)}};
}

Json encode(const GameSession& s) {
  Json j;
  j["id"] = s.id;
  j["n"] = s.state.n();
  j["mode"] = to_string(s.mode);
  if (s.engine) {
    j["engine"] = {{"policy", s.engine->policy},
                   {"seed", s.engine->seed},
                   {"seat", s.engine->seat}};
  } else {
    j["engine"] = nullptr;
  }
  j["state"] = encode(s.state);
  j["label"] = to_string(s.state);
  j["monovariant"] = monovariant(s.state);
  Json history = Json::array();
  for (const PlayedMove& p : s.history) history.push_back(encode(p));
  j["history"] = history;
  Json moves = Json::array();
  for (const Move& m : legal_moves(s.state)) moves.push_back(encode(m));
  j["legal_moves"] = moves;
  if (s.finished()) {
    j["status"] = "finished";
    j["to_move"] = nullptr;
    j["winner"] = encode(winner_for_length(s.history.size()));
  } else {
    j["status"] = "in_progress";
    j["to_move"] = s.to_move();
    j["winner"] = nullptr;
  }
  return j;
}

CreateGameRequest decode_create_request(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("request body must be an object");
  CreateGameRequest r;
  if (!j.contains("n") || !j["n"].is_number_integer() ||
      j["n"].get<std::int64_t>() < 0 ||
      j["n"].get<std::int64_t>() > 1'000'000) {
    throw InvalidArgument("field 'n' must be an integer in [0, 1000000]");
  }
  r.n = j["n"].get<std::uint32_t>();
  const std::string mode = j.value("mode", std::string("human_vs_engine"));
  r.mode = parse_game_mode(mode);
  if (r.mode == GameMode::HumanVsEngine) {
    EngineSeat e;
    e.policy = j.value("policy", std::string("random"));
    if (j.contains("engine_seat")) {
      if (!j["engine_seat"].is_number_integer()) {
        throw InvalidArgument("field 'engine_seat' must be 1 or 2");
      }
      e.seat = j["engine_seat"].get<int>();
    }
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) {
        throw InvalidArgument("field 'seed' must be a non-negative integer");
      }
      e.seed = j["seed"].get<std::uint64_t>();
    }
    r.engine = e;
  }
  return r;
}

HttpConfig http_config_from_env(HttpConfig defaults) {
  if (const char* bind = std::getenv("ZECKGAME_BIND"); bind && *bind) {
    defaults.bind = bind;
  }
  if (const char* port = std::getenv("ZECKGAME_PORT"); port && *port) {
    try {
      defaults.port = std::stoi(port);
    } catch (const std::logic_error&) {
      throw InvalidArgument(std::string("ZECKGAME_PORT is not a number: ") + port);
    }
  }
  return defaults;
}

}  // namespace zeck

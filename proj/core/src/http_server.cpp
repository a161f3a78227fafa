#include <atomic>
#include <charconv>
#include <functional>

#include <httplib.h>

#include "zeckgame/service.hpp"
#include "zeckgame/solver.hpp"

namespace zeck {

namespace {

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, const std::string& kind,
                const std::string& message, Json extra = Json::object()) {
  Json body{{"error", kind}, {"message", message}};
  body.update(extra);
  send_json(res, status, body);
}

// Maps library errors onto HTTP statuses.
void guarded(httplib::Response& res, const std::function<void()>& handler) {
  try {
    handler();
  } catch (const NotFound& e) {
    send_error(res, 404, "not_found", e.what());
  } catch (const Conflict& e) {
    send_error(res, 409, "conflict", e.what());
  } catch (const IllegalMove& e) {
    send_error(res, 422, "illegal_move", e.what());
  } catch (const CapacityExceeded& e) {
    send_error(res, 422, "capacity", e.what(), {{"limit", e.limit()}});
  } catch (const DegenerateData& e) {
    send_error(res, 422, "degenerate", e.what());
  } catch (const InvalidArgument& e) {
    send_error(res, 400, "invalid_argument", e.what());
  } catch (const nlohmann::json::exception& e) {
    send_error(res, 400, "invalid_argument", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("request body is not JSON: ") + e.what());
  }
}

std::uint64_t query_uint(const httplib::Request& req, const char* name,
                         std::optional<std::uint64_t> fallback = std::nullopt) {
  if (!req.has_param(name)) {
    if (fallback) return *fallback;
    throw InvalidArgument(std::string("missing query parameter '") + name + "'");
  }
  const std::string text = req.get_param_value(name);
  std::uint64_t value = 0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw InvalidArgument(std::string("query parameter '") + name +
                          "' must be a non-negative integer");
  }
  return value;
}

std::uint32_t query_n(const httplib::Request& req) {
  const std::uint64_t n = query_uint(req, "n");
  if (n == 0 || n > 1'000'000) {
    throw InvalidArgument("query parameter 'n' must be in [1, 1000000]");
  }
  return static_cast<std::uint32_t>(n);
}

}  // namespace

struct HttpServer::Impl {
  GameService& service;
  HttpConfig config;
  httplib::Server server;
  std::atomic<bool> bound{false};

  Impl(GameService& s, HttpConfig c) : service(s), config(std::move(c)) {
    routes();
  }

  void routes() {
    server.set_default_headers({
        {"Access-Control-Allow-Origin", "*"},
        {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
        {"Access-Control-Allow-Headers", "Content-Type"},
    });

    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });

    server.Post("/games", [this](const httplib::Request& req,
                                 httplib::Response& res) {
      guarded(res, [&] {
        const CreateGameRequest request = decode_create_request(parse_body(req));
        send_json(res, 201, encode(service.create_game(request)));
      });
    });

    server.Get(R"(/games/([0-9A-Za-z]+))", [this](const httplib::Request& req,
                                                   httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, encode(service.get_game(req.matches[1]))); });
    });

    server.Post(R"(/games/([0-9A-Za-z]+)/moves)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    const Json body = parse_body(req);
                    if (!body.is_object() || !body.contains("player") ||
                        !body["player"].is_number_integer()) {
                      throw InvalidArgument("field 'player' (1 or 2) is required");
                    }
                    if (!body.contains("move")) {
                      throw InvalidArgument("field 'move' is required");
                    }
                    const Move move = decode_move(body["move"]);
                    auto [session, applied] =
                        service.play(req.matches[1], body["player"].get<int>(), move);
                    Json view = encode(session);
                    Json moves = Json::array();
                    for (const auto& p : applied) moves.push_back(encode(p));
                    view["applied"] = moves;
                    send_json(res, 200, view);
                  });
                });

    server.Get("/analysis/solve", [this](const httplib::Request& req,
                                         httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, service.analysis_solve(query_n(req))); });
    });

    server.Get("/analysis/bounds", [this](const httplib::Request& req,
                                          httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, service.analysis_bounds(query_n(req))); });
    });

    server.Get("/analysis/simulate", [this](const httplib::Request& req,
                                            httplib::Response& res) {
      guarded(res, [&] {
        const std::uint32_t n = query_n(req);
        const std::uint64_t trials = query_uint(req, "trials", 9999);
        const std::uint64_t seed = query_uint(req, "seed", 0);
        if (trials == 0) throw InvalidArgument("trials must be positive");
        send_json(res, 200, service.analysis_simulate(n, trials, seed));
      });
    });

    server.Get("/analysis/tree", [this](const httplib::Request& req,
                                        httplib::Response& res) {
      guarded(res, [&] {
        const std::uint32_t n = query_n(req);
        const std::string name =
            req.has_param("format") ? req.get_param_value("format") : "json";
        const GraphFormat format = parse_graph_format(name);
        res.status = 200;
        res.set_content(service.analysis_tree(n, format),
                        format == GraphFormat::Dot ? "text/vnd.graphviz" : kJson);
      });
    });

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        send_error(res, res.status, "http", httplib::status_message(res.status));
      }
    });
  }
};

HttpServer::HttpServer(GameService& service, HttpConfig config)
    : impl_(std::make_unique<Impl>(service, std::move(config))) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  int port = impl_->config.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(impl_->config.bind);
  } else if (!impl_->server.bind_to_port(impl_->config.bind, port)) {
    port = -1;
  }
  if (port < 0) {
    throw Error("cannot bind " + impl_->config.bind + ":" +
                std::to_string(impl_->config.port));
  }
  impl_->bound = true;
  return port;
}

void HttpServer::listen() {
  if (!impl_->bound) throw Error("listen() called before bind()");
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace zeck

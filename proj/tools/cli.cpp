#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "zeckgame/errors.hpp"
#include "zeckgame/fibonacci.hpp"
#include "zeckgame/serialization.hpp"
#include "zeckgame/service.hpp"
#include "zeckgame/simulator.hpp"
#include "zeckgame/solver.hpp"
#include "zeckgame/strategies.hpp"

namespace zeck::cli {

namespace {

std::atomic<HttpServer*> g_server{nullptr};

void on_signal(int) {
  if (HttpServer* s = g_server.load()) s->stop();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  file << content;
  if (!file.flush()) throw Error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

std::string parities_text(const Parities& p) {
  if (p.odd && p.even) return "odd,even";
  if (p.odd) return "odd";
  if (p.even) return "even";
  return "-";
}

std::string moves_text(std::span<const Move> moves) {
  std::string out;
  for (const Move& m : moves) {
    if (!out.empty()) out += ' ';
    out += to_string(m);
  }
  return out;
}

// Options shared by several subcommands.
struct Flags {
  std::uint32_t n = 0;
  std::uint64_t trials = 9999;
  std::uint64_t seed = 0;
  std::string out;
  std::string in;
  std::string format;
  std::string policy = "random";
  std::string shape = "dag";
  std::uint32_t limit = 0;
  unsigned threads = 1;
  std::vector<std::uint32_t> ns;
  std::string bind;
  int port = -1;
  std::string snapshot;
};

SolverOptions solver_options(const Flags& f) {
  SolverOptions o;
  if (f.limit != 0) o.limit = f.limit;
  o.threads = f.threads;
  return o;
}

int cmd_simulate(const Flags& f, std::ostream& out) {
  const SimStats s = simulate(f.n, f.trials, f.seed, SimOptions{f.threads});
  out << fmt::format("n={} trials={} seed={}\n", s.n, s.trials, s.seed);
  out << fmt::format("mean={:.4f} variance={:.4f} skewness={:.4f} excess_kurtosis={:.4f}\n",
                     s.mean, s.variance, s.skewness, s.excess_kurtosis);
  out << fmt::format("lengths {}..{}  p1_wins={} p2_wins={}\n",
                     s.histogram.begin()->first, s.histogram.rbegin()->first,
                     s.p1_wins, s.p2_wins);
  if (!f.out.empty()) {
    if (f.format == "json") {
      write_file(f.out, encode(s).dump(2) + "\n");
    } else {
      std::ostringstream csv;
      write_stats_csv(csv, s);
      write_file(f.out, csv.str());
    }
  }
  return 0;
}

int cmd_fit(const Flags& f, std::ostream& out) {
  const std::string text = read_file(f.in);
  SimStats stats;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    stats = decode_sim_stats(Json::parse(text));
  } else {
    std::istringstream in(text);
    stats = read_stats_csv(in);
  }
  const GaussianFit g = gaussian_fit(stats);
  out << fmt::format("n={} trials={} mu={:.4f} sigma={:.4f} skewness={:.4f} excess_kurtosis={:.4f}\n",
                     stats.n, stats.trials, g.mu, g.sigma, stats.skewness,
                     stats.excess_kurtosis);
  if (!f.out.empty()) write_file(f.out, encode(g).dump(2) + "\n");
  return 0;
}

int cmd_scaling(const Flags& f, std::ostream& out) {
  const ScalingResult r = average_scaling(f.ns, f.trials, f.seed, SimOptions{f.threads});
  for (const auto& [n, mean] : r.means) {
    out << fmt::format("n={:<6} mean={:.3f}  mean/n={:.4f}\n", n, mean, mean / n);
  }
  out << fmt::format("slope={:.4f} intercept={:.4f}\n", r.slope, r.intercept);
  if (!f.out.empty()) write_file(f.out, encode(r).dump(2) + "\n");
  return 0;
}

int cmd_solve(const Flags& f, std::ostream& out) {
  const SolveReport r = solve(f.n, solver_options(f));
  out << fmt::format("n={} winner={} min={} max={} reachable_states={} parities={}\n",
                     r.n, to_string(r.winner), r.min_length, r.max_length,
                     r.reachable_states, parities_text(r.parities));
  if (!f.out.empty()) write_file(f.out, encode(r).dump(2) + "\n");
  return 0;
}

int cmd_lengths(const Flags& f, std::ostream& out) {
  const LengthRange r = extreme_lengths(f.n, solver_options(f));
  out << fmt::format("n={} min={} max={}\n", f.n, r.min, r.max);
  if (!f.out.empty()) {
    write_file(f.out, Json{{"n", f.n}, {"min", r.min}, {"max", r.max}}.dump(2) + "\n");
  }
  return 0;
}

int cmd_line(const Flags& f, std::ostream& out) {
  Solver solver(f.n, solver_options(f));
  const SolveReport report = solver.report();
  const std::vector<Move> moves = solver.winning_line();
  out << fmt::format("n={} winner={} length={}\n", f.n, to_string(report.winner),
                     moves.size());
  out << moves_text(moves) << '\n';
  if (!f.out.empty()) {
    Json j{{"n", f.n}, {"winner", encode(report.winner)}, {"moves", Json::array()}};
    for (const Move& m : moves) j["moves"].push_back(encode(m));
    write_file(f.out, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_bounds(const Flags& f, std::ostream& out) {
  const BoundsReport b = bounds_report(f.n);
  out << fmt::format("n={} lower={} ell={} upper={} log_upper={:.3f}\n", b.n,
                     b.lower, b.ell, b.upper, b.log_upper);
  if (!f.out.empty()) write_file(f.out, encode(b).dump(2) + "\n");
  return 0;
}

int cmd_tree(const Flags& f, std::ostream& out) {
  ExportOptions options;
  if (f.limit != 0) options.limit = f.limit;
  options.shape = f.shape == "tree" ? GraphShape::Tree : GraphShape::Dag;
  const GameGraph graph = build_graph(f.n, options);
  const auto on_line = std::count_if(graph.edges.begin(), graph.edges.end(),
                                     [](const GraphEdge& e) { return e.on_winning_line; });
  out << fmt::format("n={} shape={} nodes={} edges={} winning_line_edges={}\n",
                     f.n, f.shape, graph.nodes.size(), graph.edges.size(), on_line);
  if (!f.out.empty()) {
    const bool json = f.format == "json";
    write_file(f.out, json ? encode(graph).dump(2) + "\n" : to_dot(graph));
  }
  return 0;
}

int cmd_play(const Flags& f, std::ostream& out) {
  const GameRecord r = play_game(f.n, parse_policy(f.policy, f.seed));
  out << fmt::format("n={} policy={} length={} winner={}\n", r.n, r.policy,
                     r.length(), to_string(r.winner));
  if (!f.out.empty()) {
    if (f.format == "csv") {
      std::ostringstream csv;
      write_records_csv(csv, std::span<const GameRecord>(&r, 1));
      write_file(f.out, csv.str());
    } else {
      write_file(f.out, encode(r).dump(2) + "\n");
    }
  }
  return 0;
}

int cmd_serve(const Flags& f, std::ostream& out) {
  ServiceConfig config;
  if (f.limit != 0) config.solve_limit = f.limit;
  config.snapshot_path = f.snapshot;
  GameService service(config);

  HttpConfig http = http_config_from_env();
  if (!f.bind.empty()) http.bind = f.bind;
  if (f.port >= 0) http.port = f.port;
  HttpServer server(service, http);
  const int port = server.bind();
  out << fmt::format("serving on http://{}:{}/ ({} sessions loaded)\n", http.bind,
                     port, service.session_count())
      << std::flush;

  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  service.save_snapshot();
  out << "stopped\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Zeckendorf game engine, solver and simulator", "zeckgame"};
  app.require_subcommand(1);
  Flags f;

  auto add_n = [&](CLI::App* sub) {
    sub->add_option("--n", f.n, "Game total (the game starts at {1^n})")
        ->required()
        ->check(CLI::Range(1u, 1'000'000u));
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", f.out, "Write the machine-readable result here");
  };

  auto* simulate = app.add_subcommand("simulate", "Random-game length statistics");
  add_n(simulate);
  simulate->add_option("--trials", f.trials, "Number of games")->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", f.seed, "Batch seed")->capture_default_str();
  simulate->add_option("--threads", f.threads, "Worker threads (0 = all cores)")->capture_default_str();
  simulate->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  add_out(simulate);

  auto* fit = app.add_subcommand("fit", "Gaussian fit of a stats file (csv or json)");
  fit->add_option("--in", f.in, "Stats file written by simulate")->required()->check(CLI::ExistingFile);
  add_out(fit);

  auto* scaling = app.add_subcommand("scaling", "Mean game length against n with a least-squares line");
  scaling->add_option("--ns", f.ns, "Values of n, e.g. --ns 50 100 150 200")->required()->delimiter(',');
  scaling->add_option("--trials", f.trials, "Games per n")->capture_default_str()->check(CLI::PositiveNumber);
  scaling->add_option("--seed", f.seed, "Batch seed")->capture_default_str();
  scaling->add_option("--threads", f.threads, "Worker threads (0 = all cores)")->capture_default_str();
  add_out(scaling);

  auto add_solver = [&](CLI::App* sub) {
    add_n(sub);
    sub->add_option("--limit", f.limit, "Largest n to search exhaustively (default 25)");
    sub->add_option("--threads", f.threads, "Search threads")->capture_default_str();
    add_out(sub);
  };
  auto* solve_cmd = app.add_subcommand("solve", "Optimal-play winner and exhaustive game lengths");
  add_solver(solve_cmd);
  auto* lengths = app.add_subcommand("lengths", "Shortest and longest complete games");
  add_solver(lengths);
  auto* line = app.add_subcommand("line", "One optimal line of play");
  add_solver(line);

  auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds on game length");
  add_n(bounds);
  add_out(bounds);

  auto* tree = app.add_subcommand("tree", "Export the game graph");
  add_n(tree);
  tree->add_option("--format", f.format, "dot or json (default dot)")->check(CLI::IsMember({"dot", "json"}));
  tree->add_option("--shape", f.shape, "dag (one node per position) or tree (one per move sequence)")
      ->capture_default_str()
      ->check(CLI::IsMember({"dag", "tree"}));
  tree->add_option("--limit", f.limit, "Largest n to export (default 15)");
  add_out(tree);

  auto* play = app.add_subcommand("play", "Play one game with a fixed policy");
  add_n(play);
  play->add_option("--policy", f.policy, "greedy, longest or random")
      ->capture_default_str()
      ->check(CLI::IsMember({"greedy", "longest", "random"}));
  play->add_option("--seed", f.seed, "Seed for the random policy")->capture_default_str();
  play->add_option("--format", f.format, "json or csv (default json)")->check(CLI::IsMember({"json", "csv"}));
  add_out(play);

  auto* serve = app.add_subcommand("serve", "Run the HTTP game service");
  serve->add_option("--bind", f.bind, "Bind address (env ZECKGAME_BIND, default 127.0.0.1)");
  serve->add_option("--port", f.port, "Port (env ZECKGAME_PORT, default 8080)");
  serve->add_option("--limit", f.limit, "Solver limit for /analysis/solve (default 25)");
  serve->add_option("--snapshot", f.snapshot, "Load sessions from and save them to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (simulate->parsed()) return cmd_simulate(f, out);
    if (fit->parsed()) return cmd_fit(f, out);
    if (scaling->parsed()) return cmd_scaling(f, out);
    if (solve_cmd->parsed()) return cmd_solve(f, out);
    if (lengths->parsed()) return cmd_lengths(f, out);
    if (line->parsed()) return cmd_line(f, out);
    if (bounds->parsed()) return cmd_bounds(f, out);
    if (tree->parsed()) return cmd_tree(f, out);
    if (play->parsed()) return cmd_play(f, out);
    if (serve->parsed()) return cmd_serve(f, out);
  } catch (const CapacityExceeded& e) {
    err << "zeckgame: capacity error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "zeckgame: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace zeck::cli

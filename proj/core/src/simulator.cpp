#include "zeckgame/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "zeckgame/errors.hpp"

namespace zeck {

namespace {

unsigned worker_count(const SimOptions& options, std::uint64_t trials) {
  unsigned t = options.threads == 0 ? std::thread::hardware_concurrency()
                                    : options.threads;
  t = std::max(1u, t);
  return static_cast<unsigned>(std::min<std::uint64_t>(t, trials));
}

// Runs body(g) for g in [0, count) over a worker pool. Each g writes only to
// its own output slot, so the schedule cannot affect results.
template <typename Body>
void parallel_for(std::uint64_t count, unsigned threads, Body&& body) {
  if (threads <= 1) {
    for (std::uint64_t g = 0; g < count; ++g) body(g);
    return;
  }
  std::atomic<std::uint64_t> cursor{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::uint64_t g = cursor++; g < count; g = cursor++) body(g);
    });
  }
}

std::uint32_t random_game_length(std::uint32_t n, std::uint64_t seed,
                                 std::uint64_t g) {
  RandomStream rng = RandomStream::for_game(seed, g);
  GameState state = GameState::initial(n);
  std::uint32_t length = 0;
  while (!is_terminal(state)) {
    state = apply_move(state, random_move(state, rng));
    ++length;
  }
  return length;
}

void validate(std::uint32_t n, std::uint64_t trials) {
  if (n == 0) throw InvalidArgument("n must be positive");
  if (trials == 0) throw InvalidArgument("trials must be positive");
}

}  // namespace

void compute_moments(SimStats& s) {
  std::uint64_t total = 0;
  double sum = 0.0;
  for (const auto& [length, freq] : s.histogram) {
    total += freq;
    sum += static_cast<double>(length) * static_cast<double>(freq);
  }
  s.trials = total;
  s.mean = total == 0 ? 0.0 : sum / static_cast<double>(total);

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (const auto& [length, freq] : s.histogram) {
    const double d = static_cast<double>(length) - s.mean;
    const double f = static_cast<double>(freq);
    m2 += f * d * d;
    m3 += f * d * d * d;
    m4 += f * d * d * d * d;
  }
  const double count = static_cast<double>(total);
  s.variance = total > 1 ? m2 / (count - 1.0) : 0.0;
  if (total > 0 && m2 > 0.0) {
    m2 /= count;
    m3 /= count;
    m4 /= count;
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  } else {
    s.skewness = 0.0;
    s.excess_kurtosis = 0.0;
  }

  s.p1_wins = 0;
  s.p2_wins = 0;
  for (const auto& [length, freq] : s.histogram) {
    switch (winner_for_length(length)) {
      case Winner::Player1:
        s.p1_wins += freq;
        break;
      case Winner::Player2:
        s.p2_wins += freq;
        break;
      case Winner::NoMoves:
        break;
    }
  }
}

SimStats simulate(std::uint32_t n, std::uint64_t trials, std::uint64_t seed,
                  const SimOptions& options) {
  validate(n, trials);
  std::vector<std::uint32_t> lengths(trials);
  parallel_for(trials, worker_count(options, trials), [&](std::uint64_t g) {
    lengths[g] = random_game_length(n, seed, g);
  });

  SimStats stats;
  stats.n = n;
  stats.seed = seed;
  for (std::uint32_t len : lengths) ++stats.histogram[len];
  compute_moments(stats);
  return stats;
}

std::vector<GameRecord> random_games(std::uint32_t n, std::uint64_t trials,
                                     std::uint64_t seed,
                                     const SimOptions& options) {
  validate(n, trials);
  std::vector<GameRecord> records(trials);
  parallel_for(trials, worker_count(options, trials), [&](std::uint64_t g) {
    RandomStream rng = RandomStream::for_game(seed, g);
    GameRecord& r = records[g];
    r.n = n;
    r.policy = describe(Policy{UniformRandom{seed}});
    GameState state = GameState::initial(n);
    while (!is_terminal(state)) {
      const Move m = random_move(state, rng);
      state = apply_move(state, m);
      r.moves.push_back(m);
    }
    r.winner = winner_for_length(r.moves.size());
  });
  return records;
}

GaussianFit gaussian_fit(const SimStats& stats) {
  if (stats.trials < 2) {
    throw DegenerateData("gaussian fit needs at least two trials");
  }
  if (!(stats.variance > 0.0)) {
    throw DegenerateData("gaussian fit is degenerate: all games have length " +
                         std::to_string(stats.histogram.begin()->first));
  }
  GaussianFit fit;
  fit.mu = stats.mean;
  fit.sigma = std::sqrt(stats.variance);
  const double scale = static_cast<double>(stats.trials) /
                       (fit.sigma * std::sqrt(2.0 * std::numbers::pi));
  const std::uint32_t lo = stats.histogram.begin()->first;
  const std::uint32_t hi = stats.histogram.rbegin()->first;
  for (std::uint32_t x = lo; x <= hi; ++x) {
    const double z = (static_cast<double>(x) - fit.mu) / fit.sigma;
    fit.curve.emplace_back(static_cast<double>(x), scale * std::exp(-0.5 * z * z));
  }
  return fit;
}

ScalingResult average_scaling(std::span<const std::uint32_t> ns,
                              std::uint64_t trials, std::uint64_t seed,
                              const SimOptions& options) {
  if (ns.size() < 2) {
    throw InvalidArgument("average scaling needs at least two values of n");
  }
  ScalingResult result;
  double sx = 0.0, sy = 0.0;
  for (std::uint32_t n : ns) {
    const SimStats s = simulate(n, trials, seed, options);
    result.means.emplace_back(n, s.mean);
    sx += n;
    sy += s.mean;
  }
  const double k = static_cast<double>(ns.size());
  const double mx = sx / k, my = sy / k;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, mean] : result.means) {
    sxx += (n - mx) * (n - mx);
    sxy += (n - mx) * (mean - my);
  }
  if (sxx == 0.0) {
    throw DegenerateData("least squares slope undefined: all n are equal");
  }
  result.slope = sxy / sxx;
  result.intercept = my - result.slope * mx;
  return result;
}

void write_stats_csv(std::ostream& out, const SimStats& s) {
  out << fmt::format("# n,{}\n", s.n);
  out << fmt::format("# trials,{}\n", s.trials);
  out << fmt::format("# seed,{}\n", s.seed);
  out << fmt::format("# mean,{}\n", s.mean);
  out << fmt::format("# variance,{}\n", s.variance);
  out << fmt::format("# skewness,{}\n", s.skewness);
  out << fmt::format("# excess_kurtosis,{}\n", s.excess_kurtosis);
  out << fmt::format("# p1_wins,{}\n", s.p1_wins);
  out << fmt::format("# p2_wins,{}\n", s.p2_wins);
  out << "length,frequency\n";
  for (const auto& [length, freq] : s.histogram) {
    out << fmt::format("{},{}\n", length, freq);
  }
}

SimStats read_stats_csv(std::istream& in) {
  SimStats s;
  std::map<std::string, std::string> meta;
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw InvalidArgument("stats csv line " + std::to_string(line_no) + ": " +
                          why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with("# ")) {
      const auto comma = line.find(',');
      if (comma == std::string::npos) fail("metadata needs key,value");
      meta[line.substr(2, comma - 2)] = line.substr(comma + 1);
      continue;
    }
    if (!header_seen) {
      if (line != "length,frequency") fail("expected header length,frequency");
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::uint64_t length = 0, freq = 0;
    char comma = 0;
    if (!(row >> length >> comma >> freq) || comma != ',' || !row.eof()) {
      fail("expected <length>,<frequency>");
    }
    s.histogram[static_cast<std::uint32_t>(length)] += freq;
  }
  if (!header_seen) throw InvalidArgument("stats csv: missing histogram");
  for (const char* key : {"n", "seed"}) {
    if (!meta.contains(key)) {
      throw InvalidArgument(std::string("stats csv: missing metadata ") + key);
    }
  }
  try {
    s.n = static_cast<std::uint32_t>(std::stoul(meta["n"]));
    s.seed = std::stoull(meta["seed"]);
  } catch (const std::logic_error&) {
    throw InvalidArgument("stats csv: malformed n or seed");
  }
  compute_moments(s);
  if (meta.contains("trials") && meta["trials"] != std::to_string(s.trials)) {
    throw InvalidArgument("stats csv: trials " + meta["trials"] +
                          " does not match histogram total " +
                          std::to_string(s.trials));
  }
  return s;
}

}  // namespace zeck

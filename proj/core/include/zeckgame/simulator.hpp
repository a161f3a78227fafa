#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "zeckgame/strategies.hpp"

namespace zeck {

struct SimOptions {
  // Worker threads; 0 picks std::thread::hardware_concurrency(). The result
  // is identical for every value.
  unsigned threads = 1;
};

// Length statistics of uniformly random games on a fixed n.
struct SimStats {
  std::uint32_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::map<std::uint32_t, std::uint64_t> histogram;  // length -> frequency
  double mean = 0.0;
  double variance = 0.0;         // sample variance (divisor trials - 1)
  double skewness = 0.0;         // moment coefficient, 0 when variance is 0
  double excess_kurtosis = 0.0;  // m4 / m2^2 - 3, 0 when variance is 0
  std::uint64_t p1_wins = 0;
  std::uint64_t p2_wins = 0;

  friend bool operator==(const SimStats&, const SimStats&) = default;
};

// Game g of the batch draws from RandomStream::for_game(seed, g), so game 0
// matches play_game(n, UniformRandom{seed}).
SimStats simulate(std::uint32_t n, std::uint64_t trials, std::uint64_t seed,
                  const SimOptions& options = {});

// The same games as simulate(), with full move lists retained.
std::vector<GameRecord> random_games(std::uint32_t n, std::uint64_t trials,
                                     std::uint64_t seed,
                                     const SimOptions& options = {});

// Histogram moments, shared by simulate() and the CSV reader.
void compute_moments(SimStats& stats);

struct GaussianFit {
  double mu = 0.0;
  double sigma = 0.0;
  // (length, trials * pdf(length)) for every integer length from the
  // smallest to the largest observed; bin width is one move.
  std::vector<std::pair<double, double>> curve;
};

// Moment-matched normal curve. Throws DegenerateData when trials < 2 or the
// lengths have zero variance.
GaussianFit gaussian_fit(const SimStats& stats);

struct ScalingResult {
  std::vector<std::pair<std::uint32_t, double>> means;  // (n, mean length)
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares of mean length against n. Throws InvalidArgument
// for fewer than two points and DegenerateData when all n are equal.
ScalingResult average_scaling(std::span<const std::uint32_t> ns,
                              std::uint64_t trials, std::uint64_t seed,
                              const SimOptions& options = {});

// CSV layout: "# key,value" metadata lines (n, trials, seed, mean, variance,
// skewness, excess_kurtosis, p1_wins, p2_wins), then "length,frequency" and
// one row per observed length in increasing order.
void write_stats_csv(std::ostream& out, const SimStats& stats);

// Reads the layout above; moments are recomputed from the histogram and must
// agree with the metadata. Throws InvalidArgument on malformed input.
SimStats read_stats_csv(std::istream& in);

}  // namespace zeck

#pragma once

// Uniform sampling from S_A and Monte Carlo moment estimates.
//
// Generator: std::mt19937_64 (its output sequence is fixed by the standard).
// Bounded draws use rejection on the top of the 64-bit range, so they do not
// depend on the library's uniform_int_distribution.  Samples are produced in
// fixed-size chunks; chunk c draws from mt19937_64(splitmix64(seed, c)), so
// the sample sequence depends only on (a, seed, samples) and not on how many
// worker threads share the chunks.

#include "mahonian/core.hpp"
#include "mahonian/moments.hpp"

#include <atomic>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace mahonian {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 1));
}

/// Uniform integer in [0, bound) without modulo bias.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = gen(); while (x >= limit);
  return x % bound;
}

inline std::vector<Letter> sorted_letters(const Composition& a) {
  std::vector<Letter> letters;
  letters.reserve(a.total());
  for (std::size_t k = 0; k < a.dimension(); ++k)
    letters.insert(letters.end(), a.counts()[k], static_cast<Letter>(k + 1));
  return letters;
}

/// Fisher-Yates shuffle of the sorted multiset, in place.
inline void shuffle_letters(std::vector<Letter>& letters, std::mt19937_64& gen) {
  for (std::size_t k = letters.size(); k > 1; --k) {
    std::size_t j = uniform_below(gen, k);
    std::swap(letters[k - 1], letters[j]);
  }
}

inline Word sample_word(const Composition& a, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto letters = sorted_letters(a);
  shuffle_letters(letters, gen);
  return Word(std::move(letters), static_cast<int>(a.dimension()));
}

inline constexpr std::uint64_t kSampleChunk = 4096;
inline constexpr std::uint64_t kDefaultSeed = 20240229;

/// (inv, maj) of `samples` uniform words, in sample order.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_statistics(const Composition& a,
                                                                              std::uint64_t samples,
                                                                              std::uint64_t seed,
                                                                              unsigned threads = 1) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out(samples);
  const std::uint64_t chunks = (samples + kSampleChunk - 1) / kSampleChunk;
  const int d = static_cast<int>(a.dimension());
  const auto base = sorted_letters(a);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    std::vector<Letter> letters;
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      std::mt19937_64 gen(stream_seed(seed, c));
      const std::uint64_t end = std::min(samples, (c + 1) * kSampleChunk);
      for (std::uint64_t k = c * kSampleChunk; k < end; ++k) {
        letters = base;
        shuffle_letters(letters, gen);
        out[k] = {inversion_number(letters, d), major_index(letters)};
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1 || chunks <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

enum class Centering { exact_mean, sample_mean };
enum class Scaling { exact_sigma, sample_sigma };

inline const char* to_string(Centering c) { return c == Centering::exact_mean ? "exact_mean" : "sample_mean"; }
inline const char* to_string(Scaling s) { return s == Scaling::exact_sigma ? "exact_sigma" : "sample_sigma"; }

struct EmpiricalRow {
  unsigned r = 0, s = 0;
  double central = 0, central_se = 0;            // E((X - mu)^r (Y - mu)^s)
  double standardized = 0, standardized_se = 0;  // divided by sigma^{r+s}
};

struct EmpiricalReport {
  Composition composition;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  Centering centering = Centering::exact_mean;
  Scaling scaling = Scaling::exact_sigma;
  double mu = 0, sigma = 0;
  std::vector<EmpiricalRow> rows;
};

struct EmpiricalOptions {
  Centering centering = Centering::exact_mean;
  unsigned threads = 1;
  /// Exact sigma comes from the jet DP when the class fits this budget.
  std::uint64_t state_budget = kDefaultStateBudget;
};

inline EmpiricalReport empirical_moments(const Composition& a, const std::vector<std::pair<unsigned, unsigned>>& orders,
                                         std::uint64_t samples, std::uint64_t seed, EmpiricalOptions opt = {}) {
  if (samples < 2) throw std::domain_error("empirical_moments: at least 2 samples required");
  EmpiricalReport rep;
  rep.composition = a;
  rep.samples = samples;
  rep.seed = seed;
  rep.centering = opt.centering;

  const auto stats = sample_statistics(a, samples, seed, opt.threads);
  const double N = static_cast<double>(samples);

  double mu = to_double(mean(a));
  if (opt.centering == Centering::sample_mean) {
    double acc = 0;
    for (const auto& [inv, maj] : stats) acc += static_cast<double>(inv) + static_cast<double>(maj);
    mu = acc / (2 * N);
  }
  rep.mu = mu;

  std::optional<double> exact_variance;
  if (sub_composition_count(a) <= opt.state_budget) {
    exact_variance = to_double(central_class_moments(a, 2, opt.state_budget).at(2, 0));
  }
  double variance;
  if (exact_variance) {
    rep.scaling = Scaling::exact_sigma;
    variance = *exact_variance;
  } else {
    rep.scaling = Scaling::sample_sigma;
    double acc = 0;
    for (const auto& [inv, maj] : stats) acc += (static_cast<double>(inv) - mu) * (static_cast<double>(inv) - mu);
    variance = acc / (N - 1);
  }
  rep.sigma = std::sqrt(variance);

  for (const auto& [r, s] : orders) {
    double sum = 0, sum_sq = 0;
    for (const auto& [inv, maj] : stats) {
      const double z = std::pow(static_cast<double>(inv) - mu, r) * std::pow(static_cast<double>(maj) - mu, s);
      sum += z;
      sum_sq += z * z;
    }
    EmpiricalRow row;
    row.r = r;
    row.s = s;
    row.central = sum / N;
    const double var_z = std::max(0.0, (sum_sq - N * row.central * row.central) / (N - 1));
    row.central_se = std::sqrt(var_z / N);
    const double scale = rep.sigma > 0 ? std::pow(rep.sigma, r + s) : 1.0;
    row.standardized = row.central / scale;
    row.standardized_se = row.central_se / scale;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace mahonian

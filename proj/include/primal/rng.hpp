#pragma once

#include <cstdint>
#include <random>

namespace primal {

/// SplitMix64 mixing step. Small, well-tested generator used here only to
/// turn (seed, tag) pairs into well-spread 64-bit engine seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Tags for the independent random streams a simulation consumes.
///
/// Every stochastic component draws from its own engine, seeded from the run
/// seed and a fixed tag.  Toggling one component (say, exploration inside the
/// transmitters) therefore never shifts the randomness seen by another (say,
/// the event grid), which is what makes paired runs with a shared seed
/// directly comparable.
namespace stream {
inline constexpr std::uint64_t ground_truth = 1;
inline constexpr std::uint64_t topology = 2;
inline constexpr std::uint64_t measurements = 3;
inline constexpr std::uint64_t priming = 4;
/// Agent i draws from stream (agents + i).
inline constexpr std::uint64_t agents = 1000;
}  // namespace stream

/// Derives the engine for one named stream of a run.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t tag) {
  return std::mt19937_64{splitmix64(splitmix64(seed) ^ splitmix64(tag))};
}

/// Draws one value from a normal distribution with the given parameters.
/// A fresh distribution object is used per draw so that consumption of the
/// underlying engine depends only on the call sequence.
inline double draw_normal(std::mt19937_64& rng, double mean, double stddev) {
  std::normal_distribution<double> dist(mean, stddev);
  return dist(rng);
}

}  // namespace primal

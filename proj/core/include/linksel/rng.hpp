#pragma once

#include <cstdint>
#include <random>

namespace linksel {

// SplitMix64 finalizer; used to decorrelate structured seed tuples.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Identifies the independent random streams used by one simulation run.
enum class Stream : std::uint64_t {
  Parameter = 1,  // true-parameter init and Markov increments (per run)
  Regressor = 2,  // per (run, node)
  Noise = 3,      // per (run, node)
  Link = 4,       // broadcast link noise, per (run, node)
};

// Deterministic generator keyed by (master seed, run, node, stream).
// Streams with different keys are decorrelated by the SplitMix64 mixer,
// so runs can be executed in any order (or in parallel) with identical
// results.
inline std::mt19937_64 make_rng(std::uint64_t master, std::uint64_t run,
                                std::uint64_t node, Stream stream) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ splitmix64(run + 0x1000));
  s = splitmix64(s ^ splitmix64(node + 0x2000));
  s = splitmix64(s ^ splitmix64(static_cast<std::uint64_t>(stream) + 0x3000));
  return std::mt19937_64(s);
}

}  // namespace linksel

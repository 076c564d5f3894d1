#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace tfboost {

using Rng = std::mt19937_64;

// Named random streams. One master seed plus a path of stream tags derives
// an independent seed per (purpose, index...) via splitmix64 folding, so
// replications and sub-streams never share state and every run is
// reproducible from the master seed alone.
enum class Stream : std::uint64_t {
  kCurves = 1,
  kNoise = 2,
  kPool = 3,
  kOptimizer = 4,
  kCalibration = 5,
  kReferenceFpca = 6,
  kLearner = 7,
  kGeneric = 8,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t tag : path) {
    s = splitmix64(s ^ splitmix64(tag));
  }
  return s;
}

inline Rng make_rng(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  return Rng(derive_seed(master, path));
}

}  // namespace tfboost

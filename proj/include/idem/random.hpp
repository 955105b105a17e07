#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace idem {

/// Seeded generator with a fully specified output stream.
///
/// Engine: std::mt19937_64 seeded with the 64-bit seed (the engine itself is
/// pinned by the C++ standard). Derived draws avoid std::*_distribution,
/// whose algorithms vary between standard libraries:
///   uniform01()  = (next() >> 11) * 2^-53, in [0, 1)
///   uniform(a,b) = a + (b - a) * uniform01()
///   below(n)     = next() % n after rejecting the top partial bucket
///   chance(p)    = uniform01() < p
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::size_t below(std::size_t n);
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Per-trial seed: mix64(master + (trial + 1) * 0x9E3779B97F4A7C15).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

}  // namespace idem

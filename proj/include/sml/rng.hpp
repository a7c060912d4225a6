#pragma once
// rng.hpp -- deterministic random streams and seed derivation.
//
// Streams wrap std::mt19937_64, whose output sequence is fixed by the C++
// standard, and all variates are produced by explicit inverse-CDF / product
// constructions below so that results never depend on libstdc++ distribution
// internals. Replication r of a run seeded with s draws from an independent
// stream seeded with derive_seed(s, r).

#include <cmath>
#include <cstdint>
#include <random>

namespace sml {

// SplitMix64 finalizer; used as a seed hash, never as a stream generator.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seed for replication `replication` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replication) {
  return splitmix64(seed ^ splitmix64(replication + 1));
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0,1) from the top 53 bits of one draw.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo,hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Inverse-CDF exponential with the given rate (> 0).
  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

  // Integer uniform on {0, ..., n-1} by rejection-free scaling (n small here).
  int uniform_int(int n) { return static_cast<int>(uniform01() * n); }

  // Knuth's product method; adequate for the small means used in tests.
  int poisson(double mean) {
    const double limit = std::exp(-mean);
    double prod = uniform01();
    int k = 0;
    while (prod > limit) {
      prod *= uniform01();
      ++k;
    }
    return k;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace sml

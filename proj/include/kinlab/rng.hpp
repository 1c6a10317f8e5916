#pragma once

#include <cstdint>
#include <random>

namespace kinlab {

/// Seeded random stream. Streams are split deterministically by index so that
/// parallel workers draw from statistically independent substreams and results
/// do not depend on scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Independent substream derived from (seed, index).
  RngStream split(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

  double uniform();                       // U[0,1)
  double uniform(double a, double b);     // U[a,b)
  double normal();                        // N(0,1)
  double exponential();                   // Exp(1)
  long poisson(double mean);
  std::uint64_t next_u64();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// SplitMix64 step; used for seed derivation.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace kinlab

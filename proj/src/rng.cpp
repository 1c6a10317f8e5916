#include "kinlab/rng.hpp"

namespace kinlab {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
  std::uint64_t st = seed;
  // Warm the engine with well-mixed words even for small seeds.
  std::seed_seq seq{splitmix64(st), splitmix64(st), splitmix64(st), splitmix64(st)};
  engine_.seed(seq);
}

RngStream RngStream::split(std::uint64_t index) const {
  std::uint64_t st = seed_ ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  return RngStream(splitmix64(st));
}

double RngStream::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double RngStream::uniform(double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(engine_);
}

double RngStream::normal() {
  return std::normal_distribution<double>(0.0, 1.0)(engine_);
}

double RngStream::exponential() {
  return std::exponential_distribution<double>(1.0)(engine_);
}

long RngStream::poisson(double mean) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<long>(mean)(engine_);
}

std::uint64_t RngStream::next_u64() { return engine_(); }

}  // namespace kinlab

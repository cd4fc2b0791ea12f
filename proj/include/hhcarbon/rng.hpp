#pragma once

#include <cstdint>
#include <random>

namespace hhcarbon {

/// SplitMix64 finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Portable random stream: std::mt19937_64 (bit-exact by the C++ standard)
/// seeded with splitmix64(seed + 0x9E3779B97F4A7C15 * (stream + 1)).
/// Uniforms take the top 53 bits; normals use the Box-Muller cosine branch
/// on two consecutive uniforms. No std distribution is used, since those
/// differ between standard libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_(splitmix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

  double uniform();                  // [0, 1)
  double normal(double mean = 0.0, double sd = 1.0);
  bool bernoulli(double p) { return uniform() < p; }
  int uniform_int(int lo, int hi);   // inclusive

 private:
  std::mt19937_64 engine_;
};

}  // namespace hhcarbon

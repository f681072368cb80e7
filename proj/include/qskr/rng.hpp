#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qskr {

// Derives an independent stream seed from (seed, stream) via the splitmix64
// finalizer, so parallel draws stay reproducible regardless of evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seeded random stream with portable distributions.  mt19937_64 output is
// fully specified by the standard and the transforms below are our own, so
// results are bit-identical for a given seed on any conforming platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform01_open_low() { return 1.0 - uniform01(); }

  // Standard normal via Box-Muller (cosine branch).
  double normal() {
    const double u1 = uniform01_open_low();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qskr

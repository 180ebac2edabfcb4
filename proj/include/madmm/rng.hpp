#pragma once

#include <cstdint>

namespace madmm {

// SplitMix64 with Box–Muller normals. Streams are derived by hashing
// (seed, index), so every consumer that owns an index gets an independent,
// reproducible sequence regardless of scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();
  double uniform();  // [0, 1), 53 random bits
  double normal(double mean = 0.0, double stddev = 1.0);

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace madmm

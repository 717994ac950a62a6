#pragma once

#include <cstdint>

namespace lagcfg {

// Counter-based generator: draw k of stream `seed` is mix(seed, k), so any stream can be
// split into independent children without sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi);
  // Uniform integer in [lo, hi] \ {0}.
  long uniform_nonzero(long lo, long hi);
  double uniform_real(double lo, double hi);
  Rng split(std::uint64_t stream) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace lagcfg

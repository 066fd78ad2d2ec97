#pragma once

// Counter-based random numbers. A stream is identified by (seed, stream id)
// and produces value i by hashing a counter, so any draw can be reproduced
// without replaying the ones before it and parallel workers can own
// non-overlapping streams derived from one master seed.

#include <cstdint>

namespace gnd {

class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double next_double();

  bool bernoulli(double p) { return next_double() < p; }

  std::uint64_t counter() const { return counter_; }
  void seek(std::uint64_t counter) { counter_ = counter; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace gnd

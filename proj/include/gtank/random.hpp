#pragma once

#include <cstdint>

namespace gtank {

/// Counter-based stream: the i-th output is a SplitMix64 finalisation of
/// key + i * golden gamma, so any (seed, k, trial) triple addresses its own
/// stream without shared state.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t k, std::uint64_t trial);
  explicit CounterStream(std::uint64_t key) : key_(key) {}

  std::uint64_t next();

  /// Uniform integer in [0, bound) by Lemire's multiply-and-reject; bound > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform01();

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace gtank

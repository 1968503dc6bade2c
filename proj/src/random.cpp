#include "gtank/random.hpp"

namespace gtank {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t k, std::uint64_t trial)
    : key_(mix64(mix64(mix64(seed) ^ (k * kGamma)) ^ (trial + 0x632be59bd9b4e019ULL))) {}

std::uint64_t CounterStream::next() { return mix64(key_ + (++counter_) * kGamma); }

std::uint64_t CounterStream::below(std::uint64_t bound) {
  __uint128_t product = static_cast<__uint128_t>(next()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<__uint128_t>(next()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double CounterStream::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace gtank

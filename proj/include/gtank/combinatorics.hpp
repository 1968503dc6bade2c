#pragma once

#include <cstdint>

#include "gtank/rational.hpp"

namespace gtank {

/// C(n, k) exactly; zero when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

template <typename T>
struct Sides {
  T lhs;
  T rhs;
  bool equal() const { return lhs == rhs; }
};

/// sum_{i=r}^{n} C(i, r) against C(n+1, r+1).
Sides<BigInt> hockey_stick_sides(std::int64_t n, std::int64_t r);

/// First moment of the b-th order statistic of a k-subset of {1..N}:
/// sum_m m C(m-1, k-b) C(N-m, b-1) / C(N, k) against (N+1)(k-b+1)/(k+1).
Sides<Rational> identity_I_sides(std::int64_t N, std::int64_t k, std::int64_t b);

/// Second moment counterpart of identity_I_sides.
Sides<Rational> identity_II_sides(std::int64_t N, std::int64_t k, std::int64_t b);

/// C(a+b+k+1, a+b+1) against sum_{i=0}^{k} C(a+i, a) C(b+k-i, b).
Sides<BigInt> identity_III_sides(std::int64_t a, std::int64_t b, std::int64_t k);

}  // namespace gtank

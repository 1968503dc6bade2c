#include <doctest.h>

#include "gtank/combinatorics.hpp"
#include "gtank/error.hpp"
#include "support/oracles.hpp"

using namespace gtank;

TEST_CASE("binomial small values and the k > n convention") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 7) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(7, 7) == 1);
}

TEST_CASE("binomial(60,30) matches Pascal's triangle") {
  const auto pascal = testing::pascal_triangle(60);
  CHECK(binomial(60, 30) == pascal[60][30]);
  CHECK(binomial(60, 30) == BigInt("118264581564861424"));
}

TEST_CASE("binomial stays exact for n around 10^4") {
  // C(10000, 2) and the symmetric C(10000, 9998) by hand.
  CHECK(binomial(10000, 2) == 49995000);
  CHECK(binomial(10000, 9998) == 49995000);
  // Ratio of consecutive coefficients: C(n,k+1) (k+1) = C(n,k) (n-k).
  const BigInt a = binomial(10000, 500);
  const BigInt b = binomial(10000, 501);
  CHECK(b * 501 == a * (10000 - 500));
}

TEST_CASE("Pascal's rule and symmetry for n <= 200") {
  const auto pascal = testing::pascal_triangle(200);
  for (std::uint64_t n = 1; n <= 200; ++n) {
    for (std::uint64_t k = 1; k <= n; ++k) {
      REQUIRE(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
  for (std::uint64_t n = 0; n <= 200; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      REQUIRE(binomial(n, k) == binomial(n, n - k));
      REQUIRE(binomial(n, k) == pascal[n][k]);
    }
  }
}

TEST_CASE("hockey stick") {
  auto s = hockey_stick_sides(4, 2);
  CHECK(s.lhs == 10);
  CHECK(s.rhs == 10);

  for (std::int64_t r = 0; r <= 6; ++r) {
    auto t = hockey_stick_sides(r, r);
    CHECK(t.lhs == 1);
    CHECK(t.rhs == 1);
  }

  // Direct sum with Pascal-table coefficients.
  const auto pascal = testing::pascal_triangle(31);
  BigInt direct = 0;
  for (int i = 13; i <= 30; ++i) direct += pascal[static_cast<std::size_t>(i)][13];
  auto big = hockey_stick_sides(30, 13);
  CHECK(big.lhs == direct);
  CHECK(big.equal());

  for (std::int64_t n = 0; n <= 60; ++n) {
    for (std::int64_t r = 0; r <= n; ++r) REQUIRE(hockey_stick_sides(n, r).equal());
  }

  CHECK_THROWS_AS(hockey_stick_sides(2, 3), Error);
  CHECK_THROWS_AS(hockey_stick_sides(3, -1), Error);
}

TEST_CASE("identity I frozen values") {
  auto s = identity_I_sides(4, 2, 1);
  CHECK(s.lhs == ratio(10, 3));
  CHECK(s.rhs == ratio(10, 3));

  for (std::int64_t k = 1; k <= 8; ++k) {
    auto full = identity_I_sides(k, k, k);
    CHECK(full.lhs == 1);
    CHECK(full.rhs == 1);
  }

  // Order-statistic brute force at (20,7,3): E[x_(k-b+1)] over all 7-subsets of {1..20}.
  const auto u = testing::iota_universe(1, 20);
  const auto m = testing::brute_moments(u, 7, [](const std::vector<std::int64_t>& sub) {
    return Rational(static_cast<long>(sub[7 - 3]));  // b = 3rd largest
  });
  auto t = identity_I_sides(20, 7, 3);
  CHECK(t.lhs == m.mean);
  CHECK(t.equal());
}

TEST_CASE("identity II frozen values") {
  auto s = identity_II_sides(4, 2, 1);
  CHECK(s.lhs == ratio(35, 3));
  CHECK(s.rhs == ratio(35, 3));

  for (std::int64_t k = 1; k <= 8; ++k) {
    auto full = identity_II_sides(k, k, k);
    CHECK(full.lhs == 1);
    CHECK(full.rhs == 1);
  }

  // E[x_(k-b+1)^2] by brute force at (N,k,b) = (16,6,2); the full (25,6,2)
  // grid exceeds the bitmask oracle, so it is covered by the grid below.
  const auto u = testing::iota_universe(1, 16);
  const auto m = testing::brute_moments(u, 6, [](const std::vector<std::int64_t>& sub) {
    const long v = static_cast<long>(sub[6 - 2]);
    return Rational(v * v);
  });
  CHECK(identity_II_sides(16, 6, 2).lhs == m.mean);
  CHECK(identity_II_sides(25, 6, 2).equal());
}

TEST_CASE("identities I and II hold on the full grid N <= 30") {
  for (std::int64_t N = 1; N <= 30; ++N) {
    for (std::int64_t k = 1; k <= N; ++k) {
      for (std::int64_t b = 1; b <= k; ++b) {
        REQUIRE(identity_I_sides(N, k, b).equal());
        REQUIRE(identity_II_sides(N, k, b).equal());
      }
    }
  }
}

TEST_CASE("identity III") {
  auto s = identity_III_sides(1, 1, 2);
  CHECK(s.lhs == 10);
  CHECK(s.rhs == 10);

  for (std::int64_t k = 0; k <= 12; ++k) {
    auto base = identity_III_sides(0, 0, k);
    CHECK(base.lhs == k + 1);
    CHECK(base.rhs == k + 1);
  }

  const auto pascal = testing::pascal_triangle(20);
  BigInt direct = 0;
  for (int i = 0; i <= 5; ++i) direct += pascal[static_cast<std::size_t>(3 + i)][3] * pascal[static_cast<std::size_t>(2 + 5 - i)][2];
  auto t = identity_III_sides(3, 2, 5);
  CHECK(t.rhs == direct);
  CHECK(t.lhs == pascal[11][6]);
  CHECK(t.equal());

  for (std::int64_t a = 0; a <= 8; ++a) {
    for (std::int64_t b = 0; b <= 8; ++b) {
      for (std::int64_t k = 0; k <= 12; ++k) REQUIRE(identity_III_sides(a, b, k).equal());
    }
  }
}

TEST_CASE("identity preconditions") {
  CHECK_THROWS_AS(identity_I_sides(3, 4, 1), Error);
  CHECK_THROWS_AS(identity_I_sides(5, 2, 3), Error);
  CHECK_THROWS_AS(identity_II_sides(5, 2, 0), Error);
  try {
    identity_I_sides(2, 3, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidRange);
  }
}

TEST_CASE("Rational stays in lowest terms") {
  const Rational r = ratio(6, -4);
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(r.to_string() == "-3/2");
  CHECK(Rational(BigInt(10), BigInt(5)).to_string() == "2");
  CHECK_THROWS_AS(ratio(1, 0), Error);
  CHECK(ratio(1, 3) + ratio(1, 6) == ratio(1, 2));
  CHECK(ratio(1, 3) < ratio(1, 2));
}

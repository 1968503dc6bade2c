#include <doctest.h>

#include <random>

#include "gtank/error.hpp"
#include "gtank/tank_estimators.hpp"
#include "support/oracles.hpp"

using namespace gtank;

namespace {

Sample sample(std::vector<Serial> s) { return Sample::from_unsorted(std::move(s)); }

Rational gtp_of(const std::vector<std::int64_t>& s) {
  // M(k+1)/k - 1, evaluated without the library.
  const auto k = static_cast<std::int64_t>(s.size());
  return ratio(s.back() * (k + 1) - k, k);
}

Rational gtp_um_of(const std::vector<std::int64_t>& s) {
  const auto k = static_cast<std::int64_t>(s.size());
  return ratio((s.back() - s.front()) * (k + 1) - (k - 1), k - 1);
}

}  // namespace

TEST_CASE("Sample validation") {
  CHECK_THROWS_AS(Sample::from_sorted({}), Error);
  CHECK_THROWS_AS(Sample::from_sorted({3, 2}), Error);
  CHECK_THROWS_AS(Sample::from_unsorted({4, 2, 4}), Error);
  CHECK_THROWS_AS(Sample::from_unsorted({0, 2}), Error);
  const Sample s = sample({9, 2, 5});
  CHECK(s.size() == 3);
  CHECK(s.max() == 9);
  CHECK(s.min() == 2);
  CHECK(s.spread() == 7);
}

TEST_CASE("gtp_estimate") {
  const Estimate e = gtp_estimate(sample({2, 5, 9}));
  CHECK(e.value == doctest::Approx(11.0).epsilon(1e-15));
  CHECK(e.method == Method::Gtp);

  for (Serial N = 1; N <= 20; ++N) {
    std::vector<Serial> all;
    for (Serial i = 1; i <= N; ++i) all.push_back(i);
    CHECK(gtp_estimate(sample(all)).value == doctest::Approx(static_cast<double>(N)));
  }

  // k = 1 is accepted: 2M - 1.
  CHECK(gtp_estimate(sample({7})).value == 13.0);

  // Mean over all 10 two-subsets of {1..5}.
  const auto m = testing::brute_moments(testing::iota_universe(1, 5), 2, [](const auto& s) {
    return gtp_value_exact(Sample::from_sorted(s));
  });
  CHECK(m.count == 10);
  CHECK(m.mean == 5);
}

TEST_CASE("gtp_um_estimate") {
  CHECK(gtp_um_estimate(sample({7, 10, 14})).value == doctest::Approx(13.0));
  CHECK(gtp_um_estimate(sample({7, 10, 14})).method == Method::GtpUm);

  for (Serial a : {1, 5, 100}) {
    for (Serial N = 2; N <= 15; ++N) {
      std::vector<Serial> all;
      for (Serial i = 0; i < N; ++i) all.push_back(a + i);
      CHECK(gtp_um_estimate(sample(all)).value == doctest::Approx(static_cast<double>(N)));
    }
  }

  const auto m = testing::brute_moments(testing::iota_universe(1, 5), 3, [](const auto& s) {
    return gtp_um_value_exact(Sample::from_sorted(s));
  });
  CHECK(m.mean == 5);
  CHECK(m.variance == ratio(12, 5));

  try {
    gtp_um_estimate(sample({4}));
    FAIL("expected insufficient-sample");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientSample);
  }
}

TEST_CASE("exact and floating estimators agree") {
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<Serial> s;
    const int k = 2 + static_cast<int>(gen() % 10);
    Serial v = 0;
    for (int i = 0; i < k; ++i) s.push_back(v += 1 + static_cast<Serial>(gen() % 50));
    const Sample smp = Sample::from_sorted(s);
    CHECK(gtp_estimate(smp).value == doctest::Approx(gtp_value_exact(smp).to_double()).epsilon(1e-12));
    CHECK(gtp_um_estimate(smp).value == doctest::Approx(gtp_um_value_exact(smp).to_double()).epsilon(1e-12));
    CHECK(gtp_value_exact(smp) == gtp_of(s));
    CHECK(gtp_um_value_exact(smp) == gtp_um_of(s));
  }
}

TEST_CASE("GTP-UM is shift invariant") {
  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 300; ++rep) {
    std::vector<Serial> s;
    const int k = 2 + static_cast<int>(gen() % 8);
    Serial v = 0;
    for (int i = 0; i < k; ++i) s.push_back(v += 1 + static_cast<Serial>(gen() % 30));
    const Sample base = Sample::from_sorted(s);
    const Serial shift = 1 + static_cast<Serial>(gen() % 10000);
    CHECK(gtp_um_estimate(base.shifted(shift)).value == gtp_um_estimate(base).value);
  }
}

TEST_CASE("exact unbiasedness and variance by brute force, N <= 12") {
  for (std::int64_t N = 2; N <= 12; ++N) {
    for (int k = 2; k <= N; ++k) {
      const auto g = testing::brute_moments(testing::iota_universe(1, N), k, gtp_of);
      REQUIRE(g.mean == N);
      REQUIRE(g.variance == gtp_variance(N, k));
      for (std::int64_t a : {1, 17}) {
        const auto u = testing::brute_moments(testing::iota_universe(a, N), k, gtp_um_of);
        REQUIRE(u.mean == N);
        REQUIRE(u.variance == gtp_um_variance(N, k));
      }
    }
  }
}

TEST_CASE("spread_pmf") {
  CHECK(spread_pmf(5, 3, 2) == ratio(3, 10));
  for (std::int64_t N = 2; N <= 10; ++N) CHECK(spread_pmf(N, N, N - 1) == 1);
  CHECK(spread_pmf(5, 3, 1) == 0);
  CHECK(spread_pmf(5, 3, 5) == 0);

  Rational total;
  for (std::int64_t s = 0; s <= 10; ++s) total += spread_pmf(8, 3, s);
  CHECK(total == 1);

  // Brute-force spread frequencies for N = 9, k = 4.
  std::vector<std::int64_t> counts(9, 0);
  std::int64_t all = 0;
  testing::for_each_mask_subset(testing::iota_universe(1, 9), 4, [&](const auto& s) {
    ++counts[static_cast<std::size_t>(s.back() - s.front())];
    ++all;
  });
  for (std::int64_t s = 0; s < 9; ++s) CHECK(spread_pmf(9, 4, s) == ratio(counts[static_cast<std::size_t>(s)], all));

  for (std::int64_t N = 2; N <= 25; ++N) {
    for (std::int64_t k = 2; k <= N; ++k) {
      Rational sum;
      for (std::int64_t s = k - 1; s <= N - 1; ++s) {
        const Rational p = spread_pmf(N, k, s);
        REQUIRE(p.sign() >= 0);
        sum += p;
      }
      REQUIRE(sum == 1);
    }
  }

  CHECK_THROWS_AS(spread_pmf(5, 1, 2), Error);
  CHECK_THROWS_AS(spread_pmf(5, 6, 2), Error);
}

TEST_CASE("spread_moments") {
  const auto m = spread_moments(5, 3);
  CHECK(m.mean == 3);
  CHECK(m.second_moment == ratio(48, 5));
  CHECK(m.variance == ratio(3, 5));

  for (std::int64_t N = 2; N <= 10; ++N) CHECK(spread_moments(N, N).variance == 0);

  for (std::int64_t N = 2; N <= 25; ++N) {
    for (std::int64_t k = 2; k <= N; ++k) {
      Rational e1, e2;
      for (std::int64_t s = k - 1; s <= N - 1; ++s) {
        const Rational p = spread_pmf(N, k, s);
        e1 += p * s;
        e2 += p * (s * s);
      }
      const auto mom = spread_moments(N, k);
      REQUIRE(mom.mean == e1);
      REQUIRE(mom.second_moment == e2);
      REQUIRE(mom.variance == e2 - e1 * e1);
    }
  }
  CHECK_THROWS_AS(spread_moments(4, 1), Error);
}

TEST_CASE("variance closed forms") {
  CHECK(gtp_variance(5, 2) == ratio(9, 4));
  CHECK(gtp_um_variance(5, 3) == ratio(12, 5));
  for (std::int64_t N = 2; N <= 10; ++N) {
    CHECK(gtp_variance(N, N) == 0);
    CHECK(gtp_um_variance(N, N) == 0);
  }
  CHECK(gtp_um_variance(50, 6) / gtp_variance(50, 6) == ratio(12, 5));
  for (std::int64_t k = 2; k <= 20; ++k) {
    CHECK(gtp_um_variance(60, k) / gtp_variance(60, k) == ratio(2 * k, k - 1));
  }
  CHECK_THROWS_AS(gtp_variance(5, 0), Error);
  CHECK_THROWS_AS(gtp_variance(5, 6), Error);
  CHECK_THROWS_AS(gtp_um_variance(5, 1), Error);
}

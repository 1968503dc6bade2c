#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <unordered_set>
#include <vector>

#include "gtank/error.hpp"
#include "gtank/miss_probability.hpp"
#include "support/oracles.hpp"

using namespace gtank;

namespace {

/// Miss counts per k for l factories of N serials, one pass over all bitmasks.
struct MissCounts {
  std::vector<std::int64_t> missing;
  std::vector<std::int64_t> total;
};

MissCounts enumerate_misses(std::int64_t N, std::int64_t l) {
  const auto n = static_cast<unsigned>(N * l);
  MissCounts c{std::vector<std::int64_t>(n + 1, 0), std::vector<std::int64_t>(n + 1, 0)};
  const std::uint32_t block = (1u << N) - 1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    bool miss = false;
    for (std::int64_t f = 0; f < l; ++f) {
      if (((mask >> (f * N)) & block) == 0) miss = true;
    }
    ++c.total[k];
    if (miss) ++c.missing[k];
  }
  return c;
}

/// Exact Var(Q) for k i.i.d. uniform factory labels, by enumerating all l^k assignments.
Rational iid_q_variance(int l, int k) {
  std::int64_t assignments = 1;
  for (int i = 0; i < k; ++i) assignments *= l;
  Rational sum, sum_sq;
  for (std::int64_t a = 0; a < assignments; ++a) {
    std::int64_t x = a;
    std::vector<bool> hit(static_cast<std::size_t>(l), false);
    for (int i = 0; i < k; ++i) {
      hit[static_cast<std::size_t>(x % l)] = true;
      x /= l;
    }
    std::int64_t empty = 0;
    for (bool h : hit) empty += h ? 0 : 1;
    const Rational q = ratio(empty, l);
    sum += q;
    sum_sq += q * q;
  }
  const Rational n(static_cast<long>(assignments));
  const Rational mean = sum / n;
  return sum_sq / n - mean * mean;
}

/// Empty-factory fractions over `trials` draws of k distinct serials from l factories of N.
std::vector<double> simulate_q(std::int64_t N, std::int64_t l, std::int64_t k, int trials, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::int64_t> pick(0, N * l - 1);
  std::vector<double> out;
  std::unordered_set<std::int64_t> chosen;
  for (int t = 0; t < trials; ++t) {
    chosen.clear();
    std::vector<bool> hit(static_cast<std::size_t>(l), false);
    while (static_cast<std::int64_t>(chosen.size()) < k) {
      const std::int64_t x = pick(gen);
      if (chosen.insert(x).second) hit[static_cast<std::size_t>(x / N)] = true;
    }
    std::int64_t empty = 0;
    for (bool h : hit) empty += h ? 0 : 1;
    out.push_back(static_cast<double>(empty) / static_cast<double>(l));
  }
  return out;
}

}  // namespace

TEST_CASE("p_miss_exact examples") {
  CHECK(p_miss_exact({2, 2, 2}) == ratio(1, 3));
  for (std::int64_t N : {1, 5, 1000}) {
    for (std::int64_t l = 2; l <= 6; ++l) CHECK(p_miss_exact({N, l, 1}) == 1);
  }
  CHECK(p_miss_exact({1, 3, 3}) == 0);
  CHECK(p_miss_exact({7, 1, 4}) == 0);
  CHECK(p_miss_exact({3, 4, 3}) == 1);  // fewer samples than factories
}

TEST_CASE("p_miss_exact equals enumeration for N*l <= 18") {
  for (std::int64_t N = 1; N <= 18; ++N) {
    for (std::int64_t l = 1; N * l <= 18; ++l) {
      const auto counts = enumerate_misses(N, l);
      for (std::int64_t k = 1; k <= N * l; ++k) {
        const auto i = static_cast<std::size_t>(k);
        REQUIRE(p_miss_exact({N, l, k}) == ratio(counts.missing[i], counts.total[i]));
      }
    }
  }
}

TEST_CASE("p_miss_exact is non-increasing in k") {
  for (std::int64_t l = 2; l <= 6; ++l) {
    Rational prev = 1;
    for (std::int64_t k = 1; k <= 10 * l; ++k) {
      const Rational p = p_miss_exact({10, l, k});
      REQUIRE(p <= prev);
      prev = p;
    }
  }
}

TEST_CASE("p_miss_exact rejects invalid queries") {
  for (MissProbabilityQuery q : {MissProbabilityQuery{0, 2, 1}, MissProbabilityQuery{2, 0, 1},
                                 MissProbabilityQuery{2, 2, 0}, MissProbabilityQuery{2, 2, 5}}) {
    try {
      p_miss_exact(q);
      FAIL("expected invalid-query");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidQuery);
    }
  }
}

TEST_CASE("p_miss_limit examples") {
  CHECK(p_miss_limit(2, 2) == doctest::Approx(0.5).epsilon(1e-15));
  for (std::int64_t l = 2; l <= 30; ++l) CHECK(p_miss_limit(l, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(p_miss_exact({10000, 5, 100}).to_double() - p_miss_limit(5, 100)) < 1e-2);
  CHECK(p_miss_limit(1, 5) == 0.0);
  // Exact limit equals the i.i.d. enumeration of assignments.
  for (int l = 2; l <= 4; ++l) {
    for (int k = 1; k <= 6; ++k) {
      std::int64_t assignments = 1, covering = 0;
      for (int i = 0; i < k; ++i) assignments *= l;
      for (std::int64_t a = 0; a < assignments; ++a) {
        std::int64_t x = a;
        std::uint32_t hit = 0;
        for (int i = 0; i < k; ++i) {
          hit |= 1u << (x % l);
          x /= l;
        }
        if (std::popcount(hit) == l) ++covering;
      }
      CHECK(p_miss_limit_exact(l, k) == ratio(assignments - covering, assignments));
    }
  }
}

TEST_CASE("finite-N probability approaches the limit") {
  for (std::int64_t l = 2; l <= 8; ++l) {
    for (std::int64_t k = l; k <= 40; ++k) {
      const Rational lim = p_miss_limit_exact(l, k);
      Rational near = p_miss_exact({10000, l, k}) - lim;
      Rational far = p_miss_exact({100, l, k}) - lim;
      if (near.sign() < 0) near = -near;
      if (far.sign() < 0) far = -far;
      REQUIRE(near.to_double() < 1e-2);
      REQUIRE(near < far);
    }
  }
}

TEST_CASE("q_expectation") {
  CHECK(q_expectation(7, 0) == 1.0);
  CHECK(q_expectation(2, 1) == 0.5);

  const auto q = simulate_q(100000, 10, 10, 40000, 2024);
  double mean = 0;
  for (double v : q) mean += v;
  mean /= static_cast<double>(q.size());
  double var = 0;
  for (double v : q) var += (v - mean) * (v - mean);
  var /= static_cast<double>(q.size() - 1);
  const double se = std::sqrt(var / static_cast<double>(q.size()));
  CHECK(std::abs(mean - q_expectation(10, 10)) < 3 * se);
}

TEST_CASE("q_variance") {
  CHECK(q_variance(2, 0) == 0.0);
  // One draw always leaves exactly one of two factories empty.
  CHECK(q_variance(2, 1) == doctest::Approx(0.0));
  CHECK(iid_q_variance(2, 1) == 0);

  for (int l = 2; l <= 5; ++l) {
    for (int k = 0; k <= 7; ++k) {
      CHECK(q_variance(l, k) == doctest::Approx(iid_q_variance(l, k).to_double()).epsilon(1e-12));
    }
  }

  const auto q = simulate_q(100000, 20, 40, 40000, 77);
  const double n = static_cast<double>(q.size());
  double mean = 0;
  for (double v : q) mean += v;
  mean /= n;
  double m2 = 0, m4 = 0;
  for (double v : q) {
    const double d = v - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  const double se = std::sqrt((m4 - m2 * m2) / n);
  CHECK(std::abs(m2 - q_variance(20, 40)) < 3 * se);

  CHECK_THROWS_AS(q_variance(1, 3), Error);
}

TEST_CASE("regime_curve") {
  std::vector<std::int64_t> ks;
  for (std::int64_t k = 10; k <= 100; k += 10) ks.push_back(k);

  const auto linear = regime_curve({1.0, 1.0}, RegimeMapping::LOfK, ks, std::nullopt);
  REQUIRE(linear.size() == ks.size());
  for (std::size_t i = 0; i < linear.size(); ++i) {
    CHECK(linear[i].k == ks[i]);
    CHECK(linear[i].l == ks[i]);
    if (i > 0) CHECK(linear[i].p_miss >= linear[i - 1].p_miss);
  }
  CHECK(linear.back().p_miss > 0.99);

  const auto root = regime_curve({1.0, 0.5}, RegimeMapping::LOfK, ks, std::nullopt);
  // The floor in l = floor(sqrt(k)) makes single steps bump upward; the
  // trend never returns to an earlier high and falls by orders of magnitude.
  double high = root.front().p_miss;
  for (std::size_t i = 1; i < root.size(); ++i) {
    CHECK(root[i].p_miss < high);
    high = std::max(high, root[i].p_miss);
  }
  CHECK(root.back().p_miss < root.front().p_miss / 100);

  const std::vector<std::int64_t> four{4};
  const auto point = regime_curve({1.0, 1.0}, RegimeMapping::LOfK, four, 2);
  CHECK(point[0].p_miss == doctest::Approx(p_miss_exact({2, 4, 4}).to_double()).epsilon(1e-15));

  // K_OF_L inverts the growth law: l = 16 with c = 1/2 needs k = 256.
  const std::vector<std::int64_t> ls{16};
  const auto inv = regime_curve({1.0, 0.5}, RegimeMapping::KOfL, ls, std::nullopt);
  CHECK(inv[0].k == 256);
  CHECK(inv[0].l == 16);

  // A tiny A drives l to 0 for small k.
  const std::vector<std::int64_t> bad{1, 2, 200};
  try {
    regime_curve({0.01, 1.0}, RegimeMapping::LOfK, bad, std::nullopt);
    FAIL("expected invalid-point");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidPoint);
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
}
